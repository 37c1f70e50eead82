#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace qtest;

namespace {

Mat random_matrix(std::mt19937_64& rng, const DomainPtr& d, std::size_t r, std::size_t c) {
    Mat m(d, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_scalar(rng, d);
    return m;
}

}  // namespace

TEST(Matrix, RandomSolveRoundTrips) {
    int solved = 0;
    for (const auto& d : {ScalarDomain::rational(), golden(), param()}) {
        std::mt19937_64 rng(17);
        for (int t = 0; t < 200; ++t) {
            const std::size_t n = 1 + t % 4;
            const Mat a = random_matrix(rng, d, n, n);
            Vec b;
            for (std::size_t i = 0; i < n; ++i) b.push_back(random_scalar(rng, d));
            try {
                const Vec x = solve(a, b);
                ASSERT_EQ(matvec(a, x), b);
                ++solved;
            } catch (const quasifold::singular_matrix&) {
                EXPECT_LT(rank(a), n);
            }
        }
    }
    EXPECT_GT(solved, 500);
}

TEST(Matrix, InverseAndLabels) {
    const auto g = golden();
    const Mat a = Mat::from_rows(g, {{S(g, "phi"), S(g, "1")}, {S(g, "1"), S(g, "0")}});
    Mat labeled = a;
    labeled.set_labels({7, 9}, {1, 4});
    const Mat inv = invert(labeled);
    EXPECT_TRUE(matmul(a, inv).is_identity());
    EXPECT_EQ(inv.row_labels(), (std::vector<int>{1, 4}));
    EXPECT_EQ(inv.col_labels(), (std::vector<int>{7, 9}));
    EXPECT_EQ(inv.row_of(4), 1u);
    EXPECT_THROW(labeled.set_labels({1, 1}, {2, 3}), quasifold::error);
}

TEST(Matrix, SingularIsReported) {
    const auto q = ScalarDomain::rational();
    const Mat a = Mat::from_rows(q, {{Scalar(q, 1), Scalar(q, 2)}, {Scalar(q, 2), Scalar(q, 4)}});
    EXPECT_THROW(invert(a), quasifold::singular_matrix);
    EXPECT_EQ(rank(a), 1u);
}

TEST(Matrix, BareissPivotsOnFirstNonzeroRow) {
    const auto q = ScalarDomain::rational();
    // Leading zero forces a row exchange.
    const Mat a = Mat::from_rows(q, {{Scalar(q, 0), Scalar(q, 1)}, {Scalar(q, 3), Scalar(q, 5)}});
    const Vec x = solve(a, Vec{Scalar(q, 2), Scalar(q, 13)});
    EXPECT_EQ(x[0], Scalar(q, 1));
    EXPECT_EQ(x[1], Scalar(q, 2));
}

TEST(Matrix, KernelBasisSpansKernel) {
    std::mt19937_64 rng(23);
    for (const auto& d : {ScalarDomain::rational(), golden(), kite_field()}) {
        for (int t = 0; t < 40; ++t) {
            const std::size_t n = 1 + t % 3, cols = n + 1 + t % 4;
            const Mat a = random_matrix(rng, d, n, cols);
            if (rank(a) < n) {
                EXPECT_THROW(kernel_basis(a), quasifold::rank_deficient);
                continue;
            }
            const auto basis = kernel_basis(a);
            ASSERT_EQ(basis.size(), cols - n);
            for (const auto& v : basis) EXPECT_TRUE(is_zero_vec(matvec(a, v)));
            Mat k = Mat::from_columns(d, basis, cols);
            EXPECT_EQ(rank(k), cols - n);
        }
    }
}

TEST(Matrix, DistinguishedKernelBasisHasUnitEntries) {
    std::mt19937_64 rng(29);
    const auto d = golden();
    for (int t = 0; t < 40; ++t) {
        const Mat a = random_matrix(rng, d, 3, 7);
        const std::vector<std::size_t> idx{0, 2, 5};
        std::vector<Vec> cols;
        for (auto c : idx) cols.push_back(a.column(c));
        if (rank(Mat::from_columns(d, cols, 3)) < 3) continue;
        const auto basis = kernel_basis(a, idx);
        ASSERT_EQ(basis.size(), 4u);
        std::size_t v = 0;
        for (std::size_t j = 0; j < 7; ++j) {
            if (j == 0 || j == 2 || j == 5) continue;
            EXPECT_TRUE(is_zero_vec(matvec(a, basis[v])));
            for (std::size_t q = 0; q < 7; ++q)
                if (q != 0 && q != 2 && q != 5) EXPECT_EQ(basis[v][q], q == j ? Scalar::one(d) : Scalar::zero(d));
            ++v;
        }
    }
}

TEST(Matrix, PivotColumnsAreFirstIndependent) {
    const auto q = ScalarDomain::rational();
    const Mat a = Mat::from_rows(q, {{Scalar(q, 1), Scalar(q, 2), Scalar(q, 0)}, {Scalar(q, 2), Scalar(q, 4), Scalar(q, 1)}});
    EXPECT_EQ(pivot_columns(a), (std::vector<std::size_t>{0, 2}));
}
