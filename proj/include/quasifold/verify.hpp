#pragma once

// Monte-Carlo checks of the symbolic atlas at sampled points of (C*)^n:
// well-definedness of monomial classes modulo Gamma, Gamma-equivariance of
// transitions, the decomposition N = Gamma_sigma exp(n), and the group
// element used to move representatives between charts.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "quasifold/atlas.hpp"
#include "quasifold/error.hpp"
#include "quasifold/matrix.hpp"
#include "quasifold/triple.hpp"

namespace quasifold {

/// Perturbation of one exponent consumed by a check (fault injection).
struct Fault {
    std::size_t row = 0;
    std::size_t col = 0;
    double delta = 1e-3;
};

struct TrialConfig {
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    int word_length = 3;
    std::int64_t integer_box = 10;
    std::optional<mpq_class> parameter_sample;
    std::optional<Fault> fault;
    bool stop_on_failure = false;  ///< end a check at its first failing trial
};

struct TrialFailure {
    std::size_t trial = 0;
    std::uint64_t seed = 0;  ///< reproduces the trial on its own
    std::string kind;        ///< "mismatch" or "search_exhausted"
    std::string target;
    double deviation = 0;
    std::string detail;
};

struct CheckStats {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double max_deviation = 0;
};

struct TrialReport {
    std::string check;
    std::size_t trials = 0;
    std::size_t skipped = 0;
    double max_deviation = 0;
    std::vector<TrialFailure> failures;
    std::map<std::string, CheckStats> breakdown;  ///< per assertion

    bool ok() const { return failures.empty(); }

    void merge(const TrialReport& o) {
        if (check.empty()) check = o.check;
        trials += o.trials;
        skipped += o.skipped;
        max_deviation = std::max(max_deviation, o.max_deviation);
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
        for (const auto& [k, v] : o.breakdown) {
            auto& s = breakdown[k];
            s.trials += v.trials;
            s.failures += v.failures;
            s.max_deviation = std::max(s.max_deviation, v.max_deviation);
        }
    }
};

namespace numeric {

using cplx = std::complex<double>;
using RMat = std::vector<std::vector<double>>;
using RVec = std::vector<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline RMat to_real(const Mat& m, const std::optional<mpq_class>& sample) {
    RMat out(m.rows(), RVec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).to_double(sample);
    return out;
}

inline RVec to_real(const Vec& v, const std::optional<mpq_class>& sample) {
    RVec out;
    for (const auto& s : v) out.push_back(s.to_double(sample));
    return out;
}

inline RVec mul(const RMat& a, const RVec& x) {
    RVec y(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
    return y;
}

/// e^{2 pi i x}
inline cplx expi(cplx x) { return std::exp(cplx(0, two_pi) * x); }

inline double frac(double x) { return x - std::floor(x); }

inline std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_text(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

/// Logarithm coordinates zeta = log(z) / (2 pi i) of a point of (C*)^n with
/// moduli in [0.5, 2] and uniform phases; zero coordinates are never produced.
inline std::vector<cplx> sample_log_point(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> modulus(0.5, 2.0), phase(-0.5, 0.5);
    std::vector<cplx> zeta(n);
    for (auto& z : zeta) {
        double r = 0.0;
        while (r <= 0.0) r = modulus(rng);
        z = cplx(phase(rng), -std::log(r) / two_pi);
    }
    return zeta;
}

/// Random integer vector with |c|_1 <= word_length: a word of generator steps.
inline std::vector<std::int64_t> random_word(std::mt19937_64& rng, std::size_t k, int word_length) {
    std::vector<std::int64_t> c(k, 0);
    if (k == 0) return c;
    std::uniform_int_distribution<int> len(0, word_length);
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    std::uniform_int_distribution<int> step(0, 1);
    const int l = len(rng);
    for (int s = 0; s < l; ++s) c[pick(rng)] += step(rng) ? 1 : -1;
    return c;
}

/// Moves v one step away from zero (random direction when v is zero).
inline void bump(std::mt19937_64& rng, std::int64_t& v) {
    if (v == 0) v = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    else v += v > 0 ? 1 : -1;
}

inline std::vector<std::int64_t> random_ints(std::mt19937_64& rng, std::size_t k, int bound) {
    std::uniform_int_distribution<int> u(-bound, bound);
    std::vector<std::int64_t> c(k);
    for (auto& v : c) v = u(rng);
    return c;
}

/// Decides numerically whether exp(theta) lies in Gamma_sigma, i.e. whether
/// theta = C m (mod Z^n) for some integer m, where C = A_sigma^{-1} G.
///
/// The cone's witnesses W (k x n, C W = I) span the part of Z^k that maps
/// onto Z^n. A unimodular U with U W = [H; 0], H upper triangular, splits
/// the coefficients: with m = U^{-1} (m1, m2), C m = H^{-1} m1 + C2 m2, so
/// m1 only matters modulo H Z^n (finitely many classes) and m2 is searched
/// in [-box, box]^(k-n) in order of increasing sup-norm.
class GammaMembership {
public:
    struct Result {
        bool found = false;
        double residual = 0;
    };

    GammaMembership(const RMat& c, std::vector<Witness> w, std::int64_t box) {
        const std::size_t n = c.size(), k = c.empty() ? 0 : c.front().size();
        if (w.size() != n) throw dimension_mismatch("one witness per cone ray is required");
        // Work on W as a k x n integer matrix, tracking U^{-1} (k x k).
        std::vector<std::vector<std::int64_t>> m(k, std::vector<std::int64_t>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t r = 0; r < k; ++r) m[r][i] = w[i].at(r);
        std::vector<std::vector<std::int64_t>> uinv(k, std::vector<std::int64_t>(k, 0));
        for (std::size_t r = 0; r < k; ++r) uinv[r][r] = 1;
        auto add_row = [&](std::size_t dst, std::size_t src, std::int64_t f) {  // row dst += f row src
            if (f == 0) return;
            for (std::size_t j = 0; j < n; ++j) m[dst][j] += f * m[src][j];
            for (std::size_t r = 0; r < k; ++r) uinv[r][src] -= f * uinv[r][dst];
        };
        auto swap_rows = [&](std::size_t a, std::size_t b) {
            std::swap(m[a], m[b]);
            for (std::size_t r = 0; r < k; ++r) std::swap(uinv[r][a], uinv[r][b]);
        };
        for (std::size_t col = 0; col < n; ++col) {
            for (;;) {
                std::size_t piv = k;
                for (std::size_t r = col; r < k; ++r)
                    if (m[r][col] != 0 && (piv == k || std::llabs(m[r][col]) < std::llabs(m[piv][col]))) piv = r;
                if (piv == k) throw rank_deficient("cone witnesses are linearly dependent");
                if (piv != col) swap_rows(piv, col);
                bool done = true;
                for (std::size_t r = col + 1; r < k; ++r) {
                    add_row(r, col, -(m[r][col] / m[col][col]));
                    if (m[r][col] != 0) done = false;
                }
                if (done) break;
            }
            if (m[col][col] < 0) {
                for (auto& x : m[col]) x = -x;
                for (std::size_t r = 0; r < k; ++r) uinv[r][col] = -uinv[r][col];
            }
        }
        n_ = n;
        // C U^{-1}: first n columns equal H^{-1}, the rest are searched.
        RMat cu(n, RVec(k, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t r = 0; r < k; ++r) cu[i][j] += c[i][r] * static_cast<double>(uinv[r][j]);
        for (std::size_t j = n; j < k; ++j) {
            RVec col(n);
            for (std::size_t i = 0; i < n; ++i) col[i] = cu[i][j];
            search_dirs_.push_back(col);
        }
        // Classes of Z^n / H Z^n: representatives 0 <= m1_i < h_ii.
        std::vector<std::int64_t> rep(n, 0);
        for (;;) {
            RVec shift(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) shift[i] += cu[i][j] * static_cast<double>(rep[j]);
            classes_.push_back(shift);
            std::size_t i = 0;
            while (i < n && rep[i] + 1 == m[i][i]) rep[i++] = 0;
            if (i == n) break;
            ++rep[i];
        }
        std::vector<std::int64_t> o(k - n, -box);
        for (;;) {
            offsets_.push_back(o);
            std::size_t i = 0;
            while (i < o.size() && o[i] == box) o[i++] = -box;
            if (i == o.size()) break;
            ++o[i];
        }
        std::stable_sort(offsets_.begin(), offsets_.end(), [](const auto& a, const auto& b) {
            auto norm = [](const auto& v) {
                std::int64_t r = 0;
                for (auto x : v) r = std::max<std::int64_t>(r, x < 0 ? -x : x);
                return r;
            };
            return norm(a) < norm(b);
        });
    }

    Result find(const RVec& theta, double tol) const {
        Result best;
        best.residual = 1e300;
        for (const auto& off : offsets_) {
            for (const auto& cls : classes_) {
                double residual = 0;
                for (std::size_t i = 0; i < n_; ++i) {
                    double v = cls[i] - theta[i];
                    for (std::size_t f = 0; f < off.size(); ++f) v += static_cast<double>(off[f]) * search_dirs_[f][i];
                    residual = std::max(residual, std::abs(v - std::round(v)));
                }
                best.residual = std::min(best.residual, residual);
                if (residual < tol) {
                    best.found = true;
                    return best;
                }
            }
        }
        return best;
    }

private:
    std::size_t n_ = 0;
    std::vector<RVec> search_dirs_;
    std::vector<RVec> classes_;
    std::vector<std::vector<std::int64_t>> offsets_;
};

/// Brute-force test that exp(theta) lies in the subgroup of (S^1)^n generated
/// by exp of the columns of `gens`: some integer m in [-box, box]^k has
/// gens * m = theta modulo Z^n. Returns the smallest residual found.
inline std::pair<bool, double> member_of_subgroup(const RVec& theta, const RMat& gens, std::int64_t box, double tol) {
    const std::size_t n = theta.size();
    const std::size_t k = gens.empty() ? 0 : gens.front().size();
    std::vector<std::int64_t> m(k, -box);
    double best = 1e300;
    for (;;) {
        double residual = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = -theta[i];
            for (std::size_t c = 0; c < k; ++c) v += gens[i][c] * static_cast<double>(m[c]);
            const double d = v - std::round(v);
            residual = std::max(residual, std::abs(d));
        }
        best = std::min(best, residual);
        if (best < tol) return {true, best};
        std::size_t i = 0;
        while (i < k && m[i] == box) m[i++] = -box;
        if (i == k) break;
        ++m[i];
    }
    return {false, best};
}

}  // namespace numeric

/// Numeric view of a compiled triple shared by all checks.
class Verifier {
public:
    Verifier(const FundamentalTriple& t, TrialConfig cfg)
        : t_(with_witnesses(t, cfg.integer_box)), cfg_(std::move(cfg)) {
        sample_ = cfg_.parameter_sample ? cfg_.parameter_sample : t_.domain()->default_sample();
        if (t_.domain()->kind() == DomainKind::rational_function && !sample_)
            throw input_error("numeric verification over a parameter field needs a parameter sample");
        if (cfg_.tolerance <= 0) throw input_error("tolerance must be positive");
        if (cfg_.samples < 1) throw input_error("at least one sample is required");
        if (cfg_.word_length < 1) throw input_error("word length must be at least 1");
        if (cfg_.integer_box < 1) throw input_error("integer box must be at least 1");
        pi_ = numeric::to_real(t_.pi(), sample_);
        for (const auto& c : t_.fan.max_cones) {
            charts_.push_back(build_chart(t_, c));
            relations_.push_back(relations(t_, c));
            std::vector<Witness> w;
            for (int j : c) w.push_back(*t_.witnesses[static_cast<std::size_t>(j - 1)]);
            membership_.emplace_back(numeric::to_real(charts_.back().gamma_raw, sample_), std::move(w),
                                     cfg_.integer_box);
        }
    }

    const FundamentalTriple& triple() const { return t_; }
    const TrialConfig& config() const { return cfg_; }

    /// Tests exp(theta) in Gamma_sigma. Returns (found, smallest residual seen).
    std::pair<bool, double> in_gamma(std::size_t chart, const numeric::RVec& theta) const {
        const auto r = membership_[chart].find(theta, cfg_.tolerance);
        return {r.found, r.residual};
    }

    /// Classifies a ratio of two points of (C*)^n as an element of Gamma_sigma:
    /// moduli must be 1 and the phase vector must pass the membership search.
    struct RatioVerdict {
        double deviation = 0;
        bool exhausted = false;
    };

    RatioVerdict ratio_in_gamma(std::size_t chart, const std::vector<numeric::cplx>& w0,
                                const std::vector<numeric::cplx>& w1) const {
        numeric::RVec theta(w0.size());
        double modulus_dev = 0;
        for (std::size_t i = 0; i < w0.size(); ++i) {
            const numeric::cplx rho = w1[i] / w0[i];
            modulus_dev = std::max(modulus_dev, std::abs(std::abs(rho) - 1.0));
            theta[i] = numeric::frac(std::arg(rho) / numeric::two_pi);
        }
        RatioVerdict v;
        if (modulus_dev >= cfg_.tolerance) {
            v.deviation = modulus_dev;
            return v;
        }
        const auto [found, residual] = in_gamma(chart, theta);
        v.deviation = std::max(modulus_dev, residual);
        v.exhausted = !found;
        return v;
    }

    TrialReport check_class_well_defined(const Cone& sigma) const {
        const std::size_t c = t_.cone_position(sigma);
        const std::size_t n = t_.dim();
        // Exponent vectors whose exp lies in Gamma_sigma: reduced generator
        // columns followed by the relation vectors a^j.
        auto source = numeric::to_real(charts_[c].gamma_exponents, sample_);
        for (const auto& r : relations_[c].relations) {
            const auto a = numeric::to_real(r.coefficients, sample_);
            for (std::size_t i = 0; i < n; ++i) source[i].push_back(a[i]);
        }
        apply_fault(source);
        const std::size_t cols = source.empty() ? 0 : source.front().size();
        TrialReport rep = start("class_well_defined");
        for (std::size_t trial = 0; trial < cfg_.samples && !stopped(rep); ++trial) {
            const std::uint64_t seed = trial_seed("class", c, 0, trial);
            std::mt19937_64 rng(seed);
            const auto zeta = numeric::sample_log_point(rng, n);
            // Variables carrying a monomial and their exponent vectors.
            std::uniform_int_distribution<std::size_t> count(1, n);
            std::vector<std::size_t> vars(n);
            for (std::size_t i = 0; i < n; ++i) vars[i] = i;
            std::shuffle(vars.begin(), vars.end(), rng);
            vars.resize(count(rng));
            // The first variable always carries source column (trial mod cols)
            // and a nonzero shift, so every column is exercised within cols trials.
            numeric::RMat expo(n, numeric::RVec(n, 0.0));
            for (std::size_t v = 0; v < vars.size(); ++v) {
                auto word = numeric::random_word(rng, cols, cfg_.word_length - (v == 0 ? 1 : 0));
                if (v == 0) numeric::bump(rng, word[trial % cols]);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t q = 0; q < cols; ++q)
                        expo[i][vars[v]] += source[i][q] * static_cast<double>(word[q]);
            }
            auto shifts = numeric::random_word(rng, n, cfg_.word_length - 1);
            numeric::bump(rng, shifts[vars[0]]);
            auto image = [&](bool shifted) {
                std::vector<numeric::cplx> w(n);
                for (std::size_t i = 0; i < n; ++i) {
                    numeric::cplx s = 0;
                    for (auto l : vars)
                        s += expo[i][l] * (zeta[l] + (shifted ? static_cast<double>(shifts[l]) : 0.0));
                    w[i] = numeric::expi(s);
                }
                return w;
            };
            const auto v = ratio_in_gamma(c, image(false), image(true));
            record(rep, "gamma_membership", trial, seed, "{" + cone_label(sigma) + "}", v.deviation, v.exhausted,
                   "branch-shifted monomial image differs by an element outside Gamma");
        }
        return rep;
    }

    TrialReport check_transition_equivariance(const Cone& from, const Cone& to) const {
        const std::size_t cf = t_.cone_position(from), ct = t_.cone_position(to);
        const std::size_t n = t_.dim();
        auto e = numeric::to_real(transition_map(t_, from, to).exponents, sample_);
        apply_fault(e);
        const auto gamma_from = numeric::to_real(charts_[cf].gamma_exponents, sample_);
        const std::size_t k = t_.lattice.size();
        TrialReport rep = start("transition_equivariance");
        const std::string target = "{" + cone_label(from) + "}->{" + cone_label(to) + "}";
        auto transform = [&](const std::vector<numeric::cplx>& zeta) {
            std::vector<numeric::cplx> w(n);
            for (std::size_t i = 0; i < n; ++i) {
                numeric::cplx s = 0;
                for (std::size_t j = 0; j < n; ++j) s += e[i][j] * zeta[j];
                w[i] = numeric::expi(s);
            }
            return w;
        };
        for (std::size_t trial = 0; trial < cfg_.samples && !stopped(rep); ++trial) {
            const std::uint64_t seed = trial_seed("equivariance", cf, ct, trial);
            std::mt19937_64 rng(seed);
            const auto zeta = numeric::sample_log_point(rng, n);
            const auto word = numeric::random_word(rng, k, cfg_.word_length);
            auto branch = numeric::random_word(rng, n, cfg_.word_length - 1);
            numeric::bump(rng, branch[trial % n]);
            auto moved = zeta;
            for (std::size_t i = 0; i < n; ++i) {
                double g = 0;
                for (std::size_t q = 0; q < k; ++q) g += gamma_from[i][q] * static_cast<double>(word[q]);
                moved[i] += g + static_cast<double>(branch[i]);
            }
            const auto v = ratio_in_gamma(ct, transform(zeta), transform(moved));
            record(rep, "gamma_membership", trial, seed, target, v.deviation, v.exhausted,
                   "T(gamma z)/T(z) is not in the target group");
        }
        return rep;
    }

    TrialReport check_lemma_decomposition(const Cone& sigma) const {
        const std::size_t c = t_.cone_position(sigma);
        const std::size_t n = t_.dim(), d = t_.ray_count(), k = t_.lattice.size();
        const auto& rel = relations_[c].relations;
        numeric::RMat avec;  // rows: relation vectors a^j over the cone
        for (const auto& r : rel) avec.push_back(numeric::to_real(r.coefficients, sample_));
        apply_fault(avec);
        const auto a_inv = numeric::to_real(charts_[c].a_inv, sample_);
        const auto g = numeric::to_real(t_.lattice.generators, sample_);
        TrialReport rep = start("lemma_decomposition");
        const std::string target = "{" + cone_label(sigma) + "}";
        for (std::size_t trial = 0; trial < cfg_.samples && !stopped(rep); ++trial) {
            const std::uint64_t seed = trial_seed("lemma", c, 0, trial);
            std::mt19937_64 rng(seed);
            // X = integer vector + preimage of a lattice point through another cone + kernel part.
            numeric::RVec x(d, 0.0);
            const auto u = numeric::random_ints(rng, d, cfg_.word_length);
            for (std::size_t j = 0; j < d; ++j) x[j] = static_cast<double>(u[j]);
            std::uniform_int_distribution<std::size_t> pick(0, charts_.size() - 1);
            const std::size_t other = pick(rng);
            const auto word = numeric::random_word(rng, k, cfg_.word_length);
            numeric::RVec qpoint(n, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t q = 0; q < k; ++q) qpoint[i] += g[i][q] * static_cast<double>(word[q]);
            const auto pre = numeric::mul(numeric::to_real(charts_[other].a_inv, sample_), qpoint);
            for (std::size_t i = 0; i < n; ++i) x[static_cast<std::size_t>(charts_[other].cone[i] - 1)] += pre[i];
            std::uniform_real_distribution<double> coef(-1.0, 1.0);
            for (std::size_t r = 0; r < rel.size(); ++r) {
                const double s = coef(rng);
                x[static_cast<std::size_t>(rel[r].index - 1)] += s;
                for (std::size_t i = 0; i < n; ++i) x[static_cast<std::size_t>(sigma[i] - 1)] -= s * avec[r][i];
            }
            const auto pix = numeric::mul(pi_, x);
            const auto y_cone = numeric::mul(a_inv, pix);
            numeric::RVec w = x;
            for (std::size_t i = 0; i < n; ++i) w[static_cast<std::size_t>(sigma[i] - 1)] -= y_cone[i];
            double pi_w = 0;
            for (double v : numeric::mul(pi_, w)) pi_w = std::max(pi_w, std::abs(v));
            // W must equal sum_j W_j (e_j - a^j) over j outside the cone.
            double span = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double acc = w[static_cast<std::size_t>(sigma[i] - 1)];
                for (std::size_t r = 0; r < rel.size(); ++r)
                    acc += w[static_cast<std::size_t>(rel[r].index - 1)] * avec[r][i];
                span = std::max(span, std::abs(acc));
            }
            const auto [found, residual] = in_gamma(c, y_cone);
            record(rep, "pi_of_W", trial, seed, target, pi_w, false, "pi(X - Y) is not zero");
            record(rep, "W_in_kernel_span", trial, seed, target, span, false,
                   "X - Y is not spanned by the kernel basis e_j - a^j");
            record(rep, "exp_Y_in_gamma", trial, seed, target, residual, !found, "exp(Y) is not in Gamma_sigma");
        }
        return rep;
    }

    TrialReport check_proof_group_element(const Cone& from, const Cone& to) const {
        const std::size_t cf = t_.cone_position(from), ct = t_.cone_position(to);
        (void)cf;
        const std::size_t n = t_.dim(), d = t_.ray_count();
        TrialReport rep = start("proof_group_element");
        const Cone fresh = cone_difference(from, to);
        if (fresh.size() == n) {
            rep.skipped = 1;
            return rep;
        }
        auto e = numeric::to_real(transition_map(t_, from, to).exponents, sample_);
        apply_fault(e);
        // a^j over the target cone for the indices entering from `from`.
        std::vector<numeric::RVec> a_new;
        for (int j : fresh)
            for (const auto& r : relations_[ct].relations)
                if (r.index == j) a_new.push_back(numeric::to_real(r.coefficients, sample_));
        const std::string target = "{" + cone_label(from) + "}->{" + cone_label(to) + "}";
        for (std::size_t trial = 0; trial < cfg_.samples && !stopped(rep); ++trial) {
            const std::uint64_t seed = trial_seed("proof", cf, ct, trial);
            std::mt19937_64 rng(seed);
            const auto zeta = numeric::sample_log_point(rng, n);  // log coordinates of z_j, j in `from`
            auto zeta_of = [&](int j) {
                for (std::size_t q = 0; q < n; ++q)
                    if (from[q] == j) return zeta[q];
                return numeric::cplx(0);
            };
            // Logarithm of the acting element of exp(n_C).
            std::vector<numeric::cplx> log_g(d, 0.0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t f = 0; f < fresh.size(); ++f)
                    log_g[static_cast<std::size_t>(to[i] - 1)] += a_new[f][i] * zeta_of(fresh[f]);
            for (int j : fresh) log_g[static_cast<std::size_t>(j - 1)] = -zeta_of(j);
            double in_kernel = 0;
            for (std::size_t i = 0; i < n; ++i) {
                numeric::cplx acc = 0;
                for (std::size_t j = 0; j < d; ++j) acc += pi_[i][j] * log_g[j];
                in_kernel = std::max(in_kernel, std::abs(acc));
            }
            // g . eta_from(z) against eta_to(T(z)).
            double mismatch = 0;
            for (std::size_t j = 1; j <= d; ++j) {
                const int label = static_cast<int>(j);
                const numeric::cplx rep_from =
                    std::binary_search(from.begin(), from.end(), label) ? numeric::expi(zeta_of(label)) : 1.0;
                const numeric::cplx moved = numeric::expi(log_g[j - 1]) * rep_from;
                numeric::cplx expected = 1.0;
                auto pos = std::find(to.begin(), to.end(), label);
                if (pos != to.end()) {
                    const std::size_t i = static_cast<std::size_t>(pos - to.begin());
                    numeric::cplx s = 0;
                    for (std::size_t q = 0; q < n; ++q) s += e[i][q] * zeta[q];
                    expected = numeric::expi(s);
                }
                mismatch = std::max(mismatch, std::abs(moved - expected) / std::max(1.0, std::abs(expected)));
            }
            record(rep, "log_in_n_C", trial, seed, target, in_kernel, false, "group element is not in exp(n_C)");
            record(rep, "representative_match", trial, seed, target, mismatch, false,
                   "acting element does not carry eta_from(z) to eta_to(T(z))");
        }
        return rep;
    }

private:
    bool stopped(const TrialReport& rep) const { return cfg_.stop_on_failure && !rep.failures.empty(); }

    TrialReport start(const std::string& name) const {
        TrialReport r;
        r.check = name;
        return r;
    }

    std::uint64_t trial_seed(const std::string& check, std::size_t a, std::size_t b, std::size_t trial) const {
        std::uint64_t s = numeric::splitmix(cfg_.seed ^ numeric::hash_text(check));
        s = numeric::splitmix(s ^ (a * 0x100000001b3ULL));
        s = numeric::splitmix(s ^ (b * 0xc2b2ae3d27d4eb4fULL));
        return numeric::splitmix(s ^ trial);
    }

    void apply_fault(numeric::RMat& m) const {
        if (!cfg_.fault || m.empty()) return;
        if (cfg_.fault->row >= m.size() || cfg_.fault->col >= m.front().size()) return;
        m[cfg_.fault->row][cfg_.fault->col] += cfg_.fault->delta;
    }

    /// Counts a trial once (under the first assertion) and records failures per assertion.
    void record(TrialReport& rep, const std::string& assertion, std::size_t trial, std::uint64_t seed,
                const std::string& target, double deviation, bool exhausted, const std::string& what) const {
        auto& stats = rep.breakdown[assertion];
        ++stats.trials;
        stats.max_deviation = std::max(stats.max_deviation, deviation);
        rep.trials = std::max(rep.trials, trial + 1);
        rep.max_deviation = std::max(rep.max_deviation, deviation);
        if (exhausted || deviation >= cfg_.tolerance) {
            ++stats.failures;
            rep.failures.push_back({trial, seed, exhausted ? "search_exhausted" : "mismatch", target, deviation,
                                    assertion + ": " + what});
        }
    }

    FundamentalTriple t_;
    TrialConfig cfg_;
    std::optional<mpq_class> sample_;
    numeric::RMat pi_;
    std::vector<numeric::GammaMembership> membership_;
    std::vector<Chart> charts_;
    std::vector<RelationSet> relations_;
};

inline TrialReport check_class_well_defined(const FundamentalTriple& t, const Cone& sigma, const TrialConfig& cfg) {
    return Verifier(t, cfg).check_class_well_defined(sigma);
}

inline TrialReport check_transition_equivariance(const FundamentalTriple& t, const Cone& from, const Cone& to,
                                                 const TrialConfig& cfg) {
    return Verifier(t, cfg).check_transition_equivariance(from, to);
}

inline TrialReport check_lemma_decomposition(const FundamentalTriple& t, const Cone& sigma, const TrialConfig& cfg) {
    return Verifier(t, cfg).check_lemma_decomposition(sigma);
}

inline TrialReport check_proof_group_element(const FundamentalTriple& t, const Cone& from, const Cone& to,
                                             const TrialConfig& cfg) {
    return Verifier(t, cfg).check_proof_group_element(from, to);
}

struct VerificationSummary {
    std::vector<TrialReport> checks;  ///< class, equivariance, lemma, proof element

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const TrialReport& r) { return r.ok(); });
    }
};

/// Runs all four checks: per chart for the class and lemma checks, per
/// ordered pair of distinct cones for the transition checks.
inline VerificationSummary verify_all(const FundamentalTriple& t, const TrialConfig& cfg) {
    const Verifier v(t, cfg);
    TrialReport cls, eq, lemma, proof;
    cls.check = "class_well_defined";
    eq.check = "transition_equivariance";
    lemma.check = "lemma_decomposition";
    proof.check = "proof_group_element";
    const auto& cones = t.fan.max_cones;
    for (const auto& c : cones) {
        cls.merge(v.check_class_well_defined(c));
        lemma.merge(v.check_lemma_decomposition(c));
    }
    for (const auto& from : cones)
        for (const auto& to : cones) {
            if (from == to) continue;
            eq.merge(v.check_transition_equivariance(from, to));
            proof.merge(v.check_proof_group_element(from, to));
        }
    return {{cls, eq, lemma, proof}};
}

}  // namespace quasifold
