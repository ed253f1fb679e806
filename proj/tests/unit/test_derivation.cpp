#include <doctest.h>

#include <cmath>

#include "liouform/canonical.hpp"
#include "liouform/derivation.hpp"
#include "liouform/forms.hpp"
#include "liouform/rng.hpp"

using namespace liouform;
using derivation::Verdict;
using forms::Family;
using forms::FamilySpec;

namespace {

forms::LiouvillianForm theta(int n, double phi) {
    FamilySpec spec;
    spec.family = Family::theta_phi;
    spec.n = n;
    spec.phi = phi;
    return forms::make_family_form(spec);
}

forms::LiouvillianForm named(Family family, int n) {
    FamilySpec spec;
    spec.family = family;
    spec.n = n;
    return forms::make_family_form(spec);
}

forms::LiouvillianForm abc(int n, Vector a, Vector b, Vector g) {
    FamilySpec spec;
    spec.family = Family::abc_family;
    spec.n = n;
    spec.alpha = std::move(a);
    spec.beta = std::move(b);
    spec.gamma = std::move(g);
    return forms::make_family_form(spec);
}

}  // namespace

TEST_CASE("vertical coefficients are the rows of the coefficient matrix") {
    const auto poi = named(Family::poincare, 1);
    const Matrix v = derivation::vertical_coefficients(poi);
    // q^ = (p - P)/2, p^ = (Q - q)/2, Q^ = (p - P)/2, P^ = (Q - q)/2
    Matrix expected(4, 4);
    expected << 0, 0.5, 0, -0.5,
                -0.5, 0, 0.5, 0,
                0, 0.5, 0, -0.5,
                -0.5, 0, 0.5, 0;
    CHECK(max_abs(v - expected) == 0.0);

    // At phi = 0: q^ = p, p^ = 0, Q^ = 0, P^ = Q.
    const Matrix v0 = derivation::vertical_coefficients(theta(1, 0.0));
    Matrix e0 = Matrix::Zero(4, 4);
    e0(0, 1) = 1.0;
    e0(3, 2) = 1.0;
    CHECK(max_abs(v0 - e0) == 0.0);

    CHECK(max_abs(derivation::vertical_coefficients(named(Family::midpoint_canonical, 2)) -
                  0.5 * canonical::jtilde(2)) == 0.0);
}

TEST_CASE("tangent coefficients act blockwise as (-p^, q^, P^, -Q^)") {
    const Matrix t = derivation::tangent_coefficients(named(Family::poincare, 1));
    Matrix expected(4, 4);  // (1/2) [[I, -I], [-I, I]] in 2x2 blocks
    expected << 0.5, 0, -0.5, 0,
                0, 0.5, 0, -0.5,
                -0.5, 0, 0.5, 0,
                0, -0.5, 0, 0.5;
    CHECK(max_abs(t - expected) == 0.0);

    CHECK(max_abs(derivation::tangent_coefficients(named(Family::midpoint_canonical, 1)) -
                  0.5 * Matrix::Identity(4, 4)) == 0.0);

    // Property: row blocks of T are the signed permutation of the rows of A.
    Rng rng(31);
    for (int n : {1, 3}) {
        const auto f = theta(n, rng.uniform(0.0, 6.3));
        const Matrix a = f.matrix();
        const Matrix tn = derivation::tangent_coefficients(f);
        CHECK(max_abs(tn.middleRows(0, n) + a.middleRows(n, n)) == 0.0);
        CHECK(max_abs(tn.middleRows(n, n) - a.middleRows(0, n)) == 0.0);
        CHECK(max_abs(tn.middleRows(2 * n, n) - a.middleRows(3 * n, n)) == 0.0);
        CHECK(max_abs(tn.middleRows(3 * n, n) + a.middleRows(2 * n, n)) == 0.0);
    }
}

TEST_CASE("implicit map of the Poincare form is the exact null map") {
    for (int n : {1, 2, 3}) {
        const auto map = derivation::implicit_map(named(Family::poincare, n));
        CHECK(max_abs(map.P0) == 0.0);
        CHECK(max_abs(map.Ph) == 0.0);
    }
}

TEST_CASE("implicit map of the midpoint family is I/2 for every beta") {
    Rng rng(32);
    for (int trial = 0; trial < 25; ++trial) {
        FamilySpec spec;
        spec.family = Family::midpoint_family;
        spec.n = 2;
        spec.beta = rng.uniform_vector(2, -1.0, 1.0);
        const auto map = derivation::implicit_map(forms::make_family_form(spec));
        CHECK(max_abs(map.P0 - 0.5 * Matrix::Identity(4, 4)) <= 1e-15);
        CHECK(max_abs(map.Ph - 0.5 * Matrix::Identity(4, 4)) <= 1e-15);
    }
}

TEST_CASE("implicit map of theta_phi carries the f/g diagonal weights") {
    for (double phi : {0.0, 0.4, M_PI / 3, 1.9, 4.4}) {
        const double f = -std::sin(phi) * (std::cos(phi) - std::sin(phi));
        const double g = std::cos(phi) * (std::cos(phi) - std::sin(phi));
        const auto map = derivation::implicit_map(theta(1, phi));
        Matrix p0(2, 2), ph(2, 2);
        p0 << f, 0, 0, g;
        ph << g, 0, 0, f;
        CHECK(max_abs(map.P0 - p0) <= 1e-15);
        CHECK(max_abs(map.Ph - ph) <= 1e-15);
    }
}

TEST_CASE("classification verdicts") {
    const auto rep_null = derivation::classify(named(Family::poincare, 1));
    CHECK(rep_null.verdict == Verdict::null_map);
    CHECK(rep_null.rho_is_zero);

    const auto rep0 = derivation::classify(theta(1, 0.0));
    CHECK(rep0.verdict == Verdict::symplectic);
    Matrix b_expected(2, 2);
    b_expected << 0.5, 0, 0, -0.5;
    CHECK(max_abs(rep0.b - b_expected) == 0.0);

    const auto rep3 = derivation::classify(theta(1, M_PI / 3));
    CHECK(rep3.verdict == Verdict::non_symplectic);
    CHECK(rep3.identity_residual ==
          doctest::Approx(std::abs(std::sin(2.0 * M_PI / 3.0))).epsilon(1e-14));

    const auto rep_abc = derivation::classify(
        abc(1, Vector::Constant(1, 0.2), Vector::Constant(1, 0.3), Vector::Constant(1, -0.3)));
    CHECK(rep_abc.verdict == Verdict::symplectic);

    const auto rep_bad = derivation::classify(
        abc(1, Vector::Zero(1), Vector::Constant(1, 0.2), Vector::Constant(1, 0.2)));
    CHECK(rep_bad.verdict == Verdict::non_symplectic);
    CHECK(rep_bad.identity_residual == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("abc partial-derivative blocks are the per-index diagonals") {
    Rng rng(33);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2;
        const Vector a = rng.uniform_vector(n, -1.0, 1.0);
        const Vector b = rng.uniform_vector(n, -1.0, 1.0);
        const Vector g = rng.uniform_vector(n, -1.0, 1.0);
        const auto map = derivation::implicit_map(abc(n, a, b, g));
        Matrix p0 = Matrix::Zero(2 * n, 2 * n), ph = Matrix::Zero(2 * n, 2 * n);
        for (int i = 0; i < n; ++i) {
            p0(i, i) = 0.5 - a[i] - g[i];
            p0(n + i, n + i) = 0.5 + a[i] - b[i];
            ph(i, i) = 0.5 + a[i] - b[i];
            ph(n + i, n + i) = 0.5 - a[i] - g[i];
        }
        CHECK(max_abs(map.P0 - p0) <= 1e-14);
        CHECK(max_abs(map.Ph - ph) <= 1e-14);
    }
}

TEST_CASE("s-parameter reduction on the gamma = -beta plane") {
    Rng rng(34);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3;
        const Vector a = rng.uniform_vector(n, -1.0, 1.0);
        const Vector b = rng.uniform_vector(n, -1.0, 1.0);
        const auto map = derivation::implicit_map(abc(n, a, b, -b));
        for (int i = 0; i < n; ++i) {
            const double s = a[i] - b[i];
            CHECK(map.P0(i, i) == doctest::Approx(0.5 - s).epsilon(1e-14));
            CHECK(map.P0(n + i, n + i) == doctest::Approx(0.5 + s).epsilon(1e-14));
            CHECK(map.Ph(i, i) == doctest::Approx(0.5 + s).epsilon(1e-14));
            CHECK(map.Ph(n + i, n + i) == doctest::Approx(0.5 - s).epsilon(1e-14));
        }
    }
}

TEST_CASE("diagonal evaluation recovers states for symplectic verdicts") {
    Rng rng(35);
    for (double phi : {0.0, M_PI / 2, 0.9}) {
        const auto rep = derivation::classify(theta(1, phi));
        for (int trial = 0; trial < 10; ++trial) {
            const Vector z = rng.uniform_vector(2, -2.0, 2.0);
            const Vector rho_diag = (rep.map.P0 + rep.map.Ph) * z;
            if (rep.verdict == Verdict::symplectic) {
                CHECK(max_abs(rho_diag - z) <= 1e-12 * std::max(1.0, max_abs(z)));
            }
        }
    }
}

TEST_CASE("kernel basis") {
    const auto poi_basis = derivation::kernel_basis(named(Family::poincare, 1));
    REQUIRE(poi_basis.size() == 2);
    // The diagonal vectors (1,0,1,0)/sqrt2 and (0,1,0,1)/sqrt2 span the kernel.
    Matrix proj = Matrix::Zero(4, 4);
    for (const auto& v : poi_basis) proj += v * v.transpose();
    Vector d1(4), d2(4);
    d1 << 1, 0, 1, 0;
    d2 << 0, 1, 0, 1;
    d1 /= std::sqrt(2.0);
    d2 /= std::sqrt(2.0);
    CHECK(max_abs(proj * d1 - d1) <= 1e-12);
    CHECK(max_abs(proj * d2 - d2) <= 1e-12);

    CHECK(derivation::kernel_basis(named(Family::midpoint_canonical, 1)).empty());
    CHECK(derivation::kernel_basis(named(Family::poincare, 2)).size() == 4);
}

TEST_CASE("verdict strings") {
    CHECK(std::string(derivation::to_string(Verdict::symplectic)) == "symplectic");
    CHECK(std::string(derivation::to_string(Verdict::non_symplectic)) == "non_symplectic");
    CHECK(std::string(derivation::to_string(Verdict::null_map)) == "null_map");
}
