#include <gtest/gtest.h>

#include <cmath>
#include <utility>
#include <vector>

#include "qjacobi/jacobi.hpp"
#include "qjacobi/oracle.hpp"
#include "qjacobi/random.hpp"

using namespace qjacobi;

namespace {

// n x n quaternion matrix equal to the identity except for the (p, q) block
// [c s; -s̄ c].
QMatrix embedded_rotation(Eigen::Index n, Eigen::Index p, Eigen::Index q, const CosineSineGroup& g) {
    QMatrix m = QMatrix::identity(n);
    m.set(p, p, Quaternion(g.c));
    m.set(q, q, Quaternion(g.c));
    m.set(p, q, g.s);
    m.set(q, p, -conjugate(g.s));
    return m;
}

CosineSineGroup rotation_for(const QMatrix& a, Eigen::Index p, Eigen::Index q) {
    return generate_rotation(gram_entry(a, p, p).w, gram_entry(a, q, q).w, gram_entry(a, p, q));
}

void expect_valid_group(const CosineSineGroup& g) {
    EXPECT_NEAR(g.c * g.c + norm_squared(g.s), 1.0, 1e-14);
    EXPECT_GE(g.c, 1.0 / std::sqrt(2.0) - 1e-14);
}

} // namespace

TEST(GenerateRotation, ZeroCouplingGivesIdentity) {
    const CosineSineGroup g = generate_rotation(2.0, 5.0, Quaternion{});
    EXPECT_TRUE(g.is_identity());
    EXPECT_EQ(g.c, 1.0);
    EXPECT_TRUE(generate_rotation(0.0, 0.0, Quaternion{}).is_identity());
}

TEST(GenerateRotation, EqualNormsGiveFortyFiveDegrees) {
    const CosineSineGroup g = generate_rotation(3.0, 3.0, Quaternion(1.0));
    EXPECT_DOUBLE_EQ(g.c, 1.0 / std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(g.s.w, 1.0 / std::sqrt(2.0));
    EXPECT_EQ(g.s.x, 0.0);
    EXPECT_EQ(g.s.y, 0.0);
    EXPECT_EQ(g.s.z, 0.0);
}

TEST(GenerateRotation, RejectsInvalidStatistics) {
    EXPECT_THROW(generate_rotation(-1.0, 1.0, Quaternion(0.5)), InvalidInput);
    EXPECT_THROW(generate_rotation(1.0, -1.0, Quaternion(0.5)), InvalidInput);
    EXPECT_THROW(generate_rotation(std::nan(""), 1.0, Quaternion(0.5)), InvalidInput);
    EXPECT_THROW(generate_rotation(1.0, 1.0, Quaternion{0, INFINITY, 0, 0}), InvalidInput);
}

TEST(GenerateRotation, OrthogonalizesRandomColumnPairs) {
    Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        QMatrix a = random_gaussian(3 + t % 20, 2, rng);
        const CosineSineGroup g = rotation_for(a, 0, 1);
        expect_valid_group(g);
        apply_rotation_columns(a, 0, 1, g);
        const double np = std::sqrt(gram_entry(a, 0, 0).w), nq = std::sqrt(gram_entry(a, 1, 1).w);
        EXPECT_LE(abs(gram_entry(a, 0, 1)), 1e-12 * np * nq);
    }
}

TEST(ApplyRotation, MatchesExplicitQuaternionProduct) {
    Rng rng(22);
    for (int t = 0; t < 20; ++t) {
        const QMatrix a = random_gaussian(6, 4, rng);
        const CosineSineGroup g = rotation_for(a, 1, 3);
        QMatrix rotated = a;
        apply_rotation_columns(rotated, 1, 3, g);
        const QMatrix want = matmul(a, embedded_rotation(4, 1, 3, g));
        EXPECT_LE(frobenius(rotated - want), 1e-14 * frobenius(a));
        EXPECT_LE(orthonormality_defect(embedded_rotation(4, 1, 3, g)), 1e-14);
    }
}

TEST(ApplyRotation, IdentityLeavesColumnsUntouched) {
    Rng rng(23);
    QMatrix a = random_gaussian(5, 3, rng);
    const QMatrix before = a;
    apply_rotation_columns(a, 0, 2, CosineSineGroup{});
    EXPECT_EQ(a, before);
    EXPECT_THROW(apply_rotation_columns(a, 0, 3, CosineSineGroup{}), IndexOutOfRange);
    EXPECT_THROW(apply_rotation_columns(a, 1, 1, CosineSineGroup{}), InvalidInput);
}

TEST(ApplyRotation, PreservesNormsAndSquaredGramDiagonal) {
    Rng rng(24);
    for (int t = 0; t < 100; ++t) {
        QMatrix a = random_uniform(4 + t % 10, 3, rng);
        const double bpp = gram_entry(a, 0, 0).w, bqq = gram_entry(a, 2, 2).w;
        const double bpq = abs(gram_entry(a, 0, 2));
        apply_rotation_columns(a, 0, 2, generate_rotation(bpp, bqq, gram_entry(a, 0, 2)));
        const double tpp = gram_entry(a, 0, 0).w, tqq = gram_entry(a, 2, 2).w;
        EXPECT_NEAR(tpp + tqq, bpp + bqq, 1e-12 * (bpp + bqq));
        const double lhs = tpp * tpp + tqq * tqq;
        const double rhs = bpp * bpp + 2 * bpq * bpq + bqq * bqq;
        EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
    }
}

TEST(SweepCyclic, VisitsPairsInRowCyclicOrder) {
    Rng rng(25);
    QMatrix a = random_uniform(6, 4, rng);
    QMatrix v = QMatrix::identity(4);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> seen;
    sweep_cyclic(a, v, [&](const RotationEvent& ev, const QMatrix&) { seen.emplace_back(ev.p, ev.q); });
    const std::vector<std::pair<Eigen::Index, Eigen::Index>> want{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    EXPECT_EQ(seen, want);
}

TEST(SweepCyclic, OrthogonalColumnsNeedNoRotation) {
    QMatrix exact(4, 3);
    exact.set(0, 0, Quaternion{1, 2, 0, 0});
    exact.set(1, 1, Quaternion{0, 0, 3, 0});
    exact.set(2, 2, Quaternion{0, 0, 0, 4});
    const QMatrix before = exact;
    QMatrix v = QMatrix::identity(3);
    EXPECT_EQ(sweep_cyclic(exact, v), 0);
    EXPECT_EQ(exact, before);
    EXPECT_EQ(v, QMatrix::identity(3));
}

TEST(SweepCyclic, ReducesOffNormAndAccumulatesV) {
    Rng rng(27);
    for (int t = 0; t < 10; ++t) {
        const QMatrix a_in = random_uniform(8, 3, rng);
        QMatrix a = a_in;
        QMatrix v = QMatrix::identity(3);
        const double before = off_norm(gram(a));
        EXPECT_GT(sweep_cyclic(a, v), 0);
        EXPECT_LT(off_norm(gram(a)), before);
        EXPECT_LE(frobenius(matmul(a_in, v) - a), 1e-12 * frobenius(a_in));
        EXPECT_LE(orthonormality_defect(v), 1e-13);
    }
}

TEST(SweepCyclic, PerPivotOffReduction) {
    Rng rng(28);
    QMatrix a = random_uniform(8, 4, rng);
    QMatrix v = QMatrix::identity(4);
    const double scale = std::pow(frobenius(gram(a)), 2);
    double off_before = off_norm(gram(a));
    for (int sweep = 0; sweep < 6; ++sweep) {
        sweep_cyclic(a, v, [&](const RotationEvent& ev, const QMatrix& after) {
            const double off_after = off_norm(gram(after));
            const double drop = off_before * off_before - off_after * off_after;
            EXPECT_NEAR(drop, 2.0 * norm_squared(ev.apq), 1e-10 * scale);
            off_before = off_after;
        });
    }
}

TEST(SweepClassical, PicksTheUniqueCoupling) {
    // Columns 1 and 3 are coupled, everything else is orthogonal.
    QMatrix a(4, 4);
    a.set(0, 0, Quaternion(2.0));
    a.set(1, 1, Quaternion{0, 1, 0, 0});
    a.set(1, 3, Quaternion{0.3, 0, 0.2, 0});
    a.set(3, 3, Quaternion(1.5));
    a.set(2, 2, Quaternion(1.0));
    QMatrix v = QMatrix::identity(4);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> seen;
    sweep_classical(a, v, [&](const RotationEvent& ev, const QMatrix&) { seen.emplace_back(ev.p, ev.q); });
    ASSERT_FALSE(seen.empty());
    EXPECT_EQ(seen.front(), (std::pair<Eigen::Index, Eigen::Index>{1, 3}));
    EXPECT_LE(abs(gram_entry(a, 1, 3)), 1e-15);
}

TEST(SweepClassical, TiesGoToSmallestPair) {
    // Every pair couples with the same modulus.
    QMatrix a(3, 3);
    for (Eigen::Index r = 0; r < 3; ++r) {
        for (Eigen::Index c = 0; c < 3; ++c) {
            a.set(r, c, Quaternion(r == c ? 2.0 : 1.0));
        }
    }
    QMatrix v = QMatrix::identity(3);
    std::vector<std::pair<Eigen::Index, Eigen::Index>> seen;
    sweep_classical(a, v, [&](const RotationEvent& ev, const QMatrix&) { seen.emplace_back(ev.p, ev.q); });
    ASSERT_FALSE(seen.empty());
    EXPECT_EQ(seen.front(), (std::pair<Eigen::Index, Eigen::Index>{0, 1}));
}

TEST(SweepClassical, LinearBoundPerRotation) {
    Rng rng(29);
    for (int t = 0; t < 5; ++t) {
        QMatrix a = random_uniform(10, 6, rng);
        QMatrix v = QMatrix::identity(6);
        const double n_pairs = 15.0;
        const double off0_sq = std::pow(off_norm(gram(a)), 2);
        long long ell = 0;
        for (int sweep = 0; sweep < 4; ++sweep) {
            sweep_classical(a, v, [&](const RotationEvent&, const QMatrix& after) {
                ++ell;
                const double off_sq = std::pow(off_norm(gram(after)), 2);
                EXPECT_LE(off_sq, std::pow(1.0 - 1.0 / n_pairs, static_cast<double>(ell)) * off0_sq * (1 + 1e-12));
            });
        }
    }
}

TEST(Svd, AlreadyDiagonal) {
    QMatrix a(2, 2);
    a.set(0, 0, Quaternion(3.0));
    a.set(1, 1, Quaternion(1.0));
    const SvdOutcome out = svd(a);
    EXPECT_EQ(out.svd.sigma, RealVector((RealVector(2) << 3.0, 1.0).finished()));
    EXPECT_EQ(out.svd.u, QMatrix::identity(2));
    EXPECT_EQ(out.svd.v, QMatrix::identity(2));
    EXPECT_TRUE(out.report.converged);
    EXPECT_EQ(out.report.sweeps, 0);
    EXPECT_EQ(out.report.off_history.size(), 1u);
}

TEST(Svd, SortsDescendingAndPermutesFactors) {
    QMatrix a(3, 3);
    a.set(0, 0, Quaternion(1.0));
    a.set(1, 1, Quaternion{0, 0, 5.0, 0});
    a.set(2, 2, Quaternion(2.0));
    const SvdOutcome sorted = svd(a);
    EXPECT_DOUBLE_EQ(sorted.svd.sigma(0), 5.0);
    EXPECT_DOUBLE_EQ(sorted.svd.sigma(1), 2.0);
    EXPECT_DOUBLE_EQ(sorted.svd.sigma(2), 1.0);
    EXPECT_LE(svd_residual(a, sorted.svd), 1e-15);

    JacobiConfig cfg;
    cfg.sort = SortOrder::None;
    const SvdOutcome raw = svd(a, cfg);
    EXPECT_DOUBLE_EQ(raw.svd.sigma(0), 1.0);
    EXPECT_DOUBLE_EQ(raw.svd.sigma(1), 5.0);
    EXPECT_EQ(raw.svd.u(1, 1), Quaternion::j());
}

TEST(Svd, RandomTallSelfConsistency) {
    Rng rng(30);
    const QMatrix a = random_uniform(100, 20, rng);
    const SvdOutcome out = svd(a);
    EXPECT_TRUE(out.report.converged);
    EXPECT_LE(out.report.sweeps, 30);
    EXPECT_LE(svd_residual(a, out.svd), 1e-10 * frobenius(a));
    EXPECT_LE(orthonormality_defect(out.svd.u), 1e-10 * 20);
    EXPECT_LE(orthonormality_defect(out.svd.v), 1e-10 * 20);
    for (Eigen::Index w = 1; w < 20; ++w) {
        EXPECT_GE(out.svd.sigma(w - 1), out.svd.sigma(w));
    }
    for (std::size_t k = 1; k < out.report.off_history.size(); ++k) {
        EXPECT_LE(out.report.off_history[k], out.report.off_history[k - 1] + 1e-12);
    }
    EXPECT_EQ(out.report.off_history.size(), static_cast<std::size_t>(out.report.sweeps) + 1);
}

TEST(Svd, MatchesEigenvaluesOfGramCounterpart) {
    Rng rng(31);
    const QMatrix a = random_uniform(12, 4, rng);
    const RealVector sigma = svd(a).svd.sigma;
    const RealVector ev = oracle::real_symmetric_eigen(real_counterpart(gram(a))).eigenvalues;
    ASSERT_EQ(ev.size(), 16);
    for (Eigen::Index w = 0; w < 4; ++w) {
        for (Eigen::Index r = 0; r < 4; ++r) {
            EXPECT_NEAR(ev(4 * w + r), sigma(w) * sigma(w), 1e-8 * sigma(w) * sigma(w));
        }
    }
}

TEST(Svd, WideMatrixUsesConjugateTranspose) {
    Rng rng(32);
    const QMatrix a = random_uniform(4, 9, rng);
    const SvdOutcome out = svd(a);
    EXPECT_EQ(out.svd.sigma.size(), 4);
    EXPECT_EQ(out.svd.u.rows(), 4);
    EXPECT_EQ(out.svd.u.cols(), 4);
    EXPECT_EQ(out.svd.v.rows(), 9);
    EXPECT_EQ(out.svd.v.cols(), 4);
    EXPECT_LE(svd_residual(a, out.svd), 1e-12 * frobenius(a));
    EXPECT_LE(orthonormality_defect(out.svd.u), 1e-12);
    EXPECT_LE(orthonormality_defect(out.svd.v), 1e-12);
    const RealVector tall = svd(conj_transpose(a)).svd.sigma;
    EXPECT_LE((tall - out.svd.sigma).norm(), 1e-12 * tall(0));
    EXPECT_LE(frobenius(low_rank(out.svd, 4) - a), 1e-12 * frobenius(a));
}

TEST(Svd, RankDeficientCompletesU) {
    Rng rng(33);
    RealVector s(2);
    s << 4.0, 1.5;
    const QMatrix a = with_singular_values(7, 4, s, rng);
    const SvdOutcome out = svd(a);
    EXPECT_NEAR(out.svd.sigma(0), 4.0, 1e-12);
    EXPECT_NEAR(out.svd.sigma(1), 1.5, 1e-12);
    EXPECT_EQ(out.svd.sigma(2), 0.0);
    EXPECT_EQ(out.svd.sigma(3), 0.0);
    EXPECT_LE(orthonormality_defect(out.svd.u), 1e-12);
    EXPECT_LE(svd_residual(a, out.svd), 1e-12 * frobenius(a));

    const SvdOutcome zero = svd(QMatrix(5, 3));
    EXPECT_EQ(zero.svd.sigma.norm(), 0.0);
    EXPECT_LE(orthonormality_defect(zero.svd.u), 1e-14);
}

TEST(Svd, SingleColumn) {
    Rng rng(34);
    const QMatrix a = random_uniform(6, 1, rng);
    const SvdOutcome out = svd(a);
    EXPECT_NEAR(out.svd.sigma(0), frobenius(a), 1e-14 * frobenius(a));
    EXPECT_EQ(out.report.sweeps, 0);
}

TEST(Svd, Errors) {
    EXPECT_THROW(svd(QMatrix(0, 3)), InvalidInput);
    QMatrix bad(2, 2);
    bad.comp(2)(1, 0) = std::nan("");
    EXPECT_THROW(svd(bad), InvalidInput);
    JacobiConfig cfg;
    cfg.tol = 0.0;
    EXPECT_THROW(svd(QMatrix::identity(2), cfg), InvalidInput);
    cfg.tol = 1e-12;
    cfg.max_sweeps = 0;
    EXPECT_THROW(svd(QMatrix::identity(2), cfg), InvalidInput);
}

TEST(Svd, NotConvergedCarriesPartialResult) {
    Rng rng(35);
    const QMatrix a = random_uniform(30, 10, rng);
    JacobiConfig cfg;
    cfg.max_sweeps = 1;
    try {
        svd(a, cfg);
        FAIL() << "expected NotConverged";
    } catch (const NotConverged& e) {
        EXPECT_FALSE(e.partial().report.converged);
        EXPECT_EQ(e.partial().report.sweeps, 1);
        EXPECT_EQ(e.partial().report.off_history.size(), 2u);
        // The partial factors are still an exact rotation of A.
        EXPECT_LE(svd_residual(a, e.partial().svd), 1e-10 * frobenius(a));
    }
}

TEST(Svd, ClassicalPivotAgreesWithCyclic) {
    Rng rng(36);
    const QMatrix a = random_uniform(9, 5, rng);
    JacobiConfig cfg;
    cfg.pivot = Pivot::ClassicalMaxPivot;
    const RealVector classical = svd(a, cfg).svd.sigma;
    const RealVector cyclic = svd(a).svd.sigma;
    EXPECT_LE((classical - cyclic).norm(), 1e-12 * cyclic(0));
}

TEST(Svd, InvariantUnderLeftUnitary) {
    Rng rng(37);
    for (int t = 0; t < 5; ++t) {
        const QMatrix a = random_uniform(8, 4, rng);
        // Random unitary 8 x 8 assembled from random rotations.
        QMatrix w = QMatrix::identity(8);
        std::uniform_int_distribution<int> idx(0, 7);
        for (int r = 0; r < 40; ++r) {
            const int p = idx(rng);
            int q = idx(rng);
            if (q == p) {
                q = (p + 1) % 8;
            }
            const Quaternion apq = random_quaternion(rng);
            std::uniform_real_distribution<double> pos(0.1, 3.0);
            const CosineSineGroup g = generate_rotation(pos(rng), pos(rng), apq);
            apply_rotation_columns(w, p, q, g);
        }
        ASSERT_LE(orthonormality_defect(w), 1e-13);
        const RealVector s1 = svd(a).svd.sigma;
        const RealVector s2 = svd(matmul(w, a)).svd.sigma;
        for (Eigen::Index k = 0; k < 4; ++k) {
            EXPECT_NEAR(s1(k), s2(k), 1e-10 * s1(k));
        }
    }
}

TEST(Svd, QuadraticConvergenceOnSeparatedSpectrum) {
    Rng rng(38);
    RealVector s(6);
    s << 10, 8, 6, 4, 2, 1;
    const double delta = 1.5;  // half of the smallest gap between squared values
    const double bound = std::sqrt(25.0 / 72.0) / delta;
    for (int t = 0; t < 3; ++t) {
        const SvdOutcome out = svd(with_singular_values(20, 6, s, rng));
        const auto& h = out.report.off_history;
        for (std::size_t k = 0; k + 1 < h.size(); ++k) {
            const double off_k = 2.0 * h[k], off_next = 2.0 * h[k + 1];  // counterpart off-norms
            if (off_k < delta / 2.0) {
                EXPECT_LE(off_next, 2.0 * bound * off_k * off_k) << "sweep " << k;
            }
        }
        for (Eigen::Index w = 0; w < 6; ++w) {
            EXPECT_NEAR(out.svd.sigma(w), s(w), 1e-12 * s(0));
        }
    }
}

TEST(LowRank, FullRankReconstructs) {
    Rng rng(39);
    const QMatrix a = random_uniform(7, 5, rng);
    const QSvd f = svd(a).svd;
    EXPECT_LE(frobenius(low_rank(f, 5) - a), 1e-9 * frobenius(a));
    EXPECT_THROW(low_rank(f, 0), IndexOutOfRange);
    EXPECT_THROW(low_rank(f, 6), IndexOutOfRange);
}

TEST(LowRank, RankOneHasVanishingMinors) {
    Rng rng(40);
    const QMatrix a = random_uniform(6, 4, rng);
    const QMatrix a1 = low_rank(svd(a).svd, 1);
    const QMatrix b = gram(a1);
    const double scale = std::pow(frobenius(b), 2);
    for (Eigen::Index p = 0; p < 4; ++p) {
        for (Eigen::Index q = p + 1; q < 4; ++q) {
            EXPECT_LE(std::fabs(b(p, p).w * b(q, q).w - norm_squared(b(p, q))), 1e-10 * scale);
        }
    }
}

TEST(LowRank, RecoversExactRankTwo) {
    Rng rng(41);
    RealVector s(2);
    s << 3.0, 0.7;
    const QMatrix a = with_singular_values(9, 5, s, rng);
    const QSvd f = svd(a).svd;
    EXPECT_LE(frobenius(low_rank(f, 2) - a), 1e-9 * frobenius(a));
    // Truncation error equals the discarded spectrum.
    for (Eigen::Index r = 1; r <= 5; ++r) {
        const double tail = f.sigma.tail(5 - r).squaredNorm();
        EXPECT_NEAR(std::pow(frobenius(a - low_rank(f, r)), 2), tail, 1e-8 * s.squaredNorm());
    }
}
