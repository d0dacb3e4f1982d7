#include "cisim/integrals.hpp"
#include "cisim/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace cisim;

TEST_CASE("spin orbital interleaving") {
    CHECK(spin_orbital(1, Spin::alpha) == 1);
    CHECK(spin_orbital(1, Spin::beta) == 2);
    CHECK(spin_orbital(3, Spin::alpha) == 5);
    for (int so = 1; so <= 8; ++so)
        CHECK(spin_orbital(spatial_of(so), spin_of(so)) == so);
    CHECK(same_spin(1, 3));
    CHECK(same_spin(2, 4));
    CHECK_FALSE(same_spin(1, 2));
}

TEST_CASE("diagonal one-body synthetic table") {
    const IntegralTable t = synthetic_table(SyntheticKind::diagonal_one_body, 0, 4);
    CHECK(t.one_electron(2, 2) == 2.0);
    CHECK(t.one_electron(3, 3) == 3.0);
    CHECK(t.one_electron(1, 3) == 0.0);
    CHECK(t.one_electron(1, 2) == 0.0); // cross-spin
    CHECK(t.two_electron(1, 2, 1, 2) == 0.0);
    CHECK_NOTHROW(t.audit());
    CHECK_THROWS_AS(t.one_electron(0, 1), std::out_of_range);
    CHECK_THROWS_AS(t.one_electron(1, 5), std::out_of_range);
}

TEST_CASE("antisymmetrized combination") {
    IntegralTable t(8);
    // <13|57> = chemist (15|37), <13|75> = chemist (17|35); all alpha
    t.set_two_electron_chemist(1, 5, 3, 7, 0.7);
    t.set_two_electron_chemist(1, 7, 3, 5, 0.2);
    CHECK(t.antisymmetrized(1, 3, 5, 7) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(t.antisymmetrized(1, 3, 7, 5) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(t.antisymmetrized(2, 4, 6, 6) == 0.0);
}

TEST_CASE("random symmetric table invariants") {
    const IntegralTable t = synthetic_table(SyntheticKind::random_symmetric, 42, 8);
    CHECK_NOTHROW(t.audit());

    const IntegralTable again = synthetic_table(SyntheticKind::random_symmetric, 42, 8);
    const IntegralTable other = synthetic_table(SyntheticKind::random_symmetric, 43, 8);
    bool any_differs = false;
    for (int p = 1; p <= 8; ++p)
        for (int q = 1; q <= 8; ++q) {
            CHECK(t.one_electron(p, q) == again.one_electron(p, q));
            CHECK(t.one_electron(p, q) == t.one_electron(q, p));
            if (t.one_electron(p, q) != other.one_electron(p, q)) any_differs = true;
        }
    CHECK(any_differs);

    // 8-fold symmetry and exchange antisymmetry, exhaustively
    for (int p = 1; p <= 8; ++p)
        for (int q = 1; q <= 8; ++q)
            for (int r = 1; r <= 8; ++r)
                for (int s = 1; s <= 8; ++s) {
                    const double v = t.two_electron(p, q, r, s);
                    CHECK(t.two_electron(q, p, s, r) == v);
                    CHECK(t.two_electron(r, s, p, q) == v);
                    CHECK(t.two_electron(r, q, p, s) == v);
                    CHECK(t.two_electron(p, s, r, q) == v);
                    CHECK(t.antisymmetrized(p, q, r, s) == -t.antisymmetrized(p, q, s, r));
                    if (!same_spin(p, r) || !same_spin(q, s)) CHECK(v == 0.0);
                }

    CHECK_THROWS_AS(synthetic_table(SyntheticKind::random_symmetric, 1, 5),
                    std::invalid_argument); // odd n_so
}

TEST_CASE("fcidump parsing") {
    const char* text = R"(&FCI NORB=2,NELEC=2,MS2=0,
  ORBSYM=1,1,
  ISYM=1,
&END
  0.5 1 1 0 0
  -0.3D0 2 2 0 0

  0.5 1 1 1 1
  0.25 1 2 1 2
  1.75 0 0 0 0
)";
    std::istringstream in(text);
    const FcidumpResult f = parse_fcidump(in);
    CHECK(f.n_electrons == 2);
    CHECK(f.ms2 == 0);
    CHECK(f.table.n_spin_orbitals() == 4);
    CHECK(f.table.core_energy() == 1.75);
    CHECK(f.table.one_electron(1, 1) == 0.5);
    CHECK(f.table.one_electron(2, 2) == 0.5);
    CHECK(f.table.one_electron(3, 3) == -0.3);
    CHECK(f.table.one_electron(4, 4) == -0.3);
    CHECK(f.table.one_electron(1, 3) == 0.0);
    // spatial (11|11): same-spin and cross-spin channels
    CHECK(f.table.two_electron(1, 1, 1, 1) == 0.5);
    CHECK(f.table.two_electron(1, 2, 1, 2) == 0.5);
    CHECK(f.table.two_electron(2, 2, 2, 2) == 0.5);
    CHECK(f.table.two_electron(1, 2, 2, 1) == 0.0); // cross-spin channel selection
    // spatial (12|12) -> physicist <1 1|3 3> and <1 2|3 4>
    CHECK(f.table.two_electron(1, 1, 3, 3) == 0.25);
    CHECK(f.table.two_electron(1, 2, 3, 4) == 0.25);
    CHECK_NOTHROW(f.table.audit());
}

TEST_CASE("fcidump error paths") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return parse_fcidump(in);
    };

    CHECK_THROWS_AS(parse("&FCI NORB=2,MS2=0\n&END\n"), parse_error);   // missing NELEC
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n"), parse_error); // no sentinel
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 x 0 0\n"), parse_error);
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\nabc 1 1 0 0\n"), parse_error);
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 3 0 0\n"), parse_error);
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 1 0\n"), parse_error);
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 0 1 0\n"), parse_error);
    CHECK_THROWS_AS(parse("&FCI NORB=2,NELEC=5,MS2=0\n&END\n"), parse_error); // NELEC > 2*NORB

    // conflicting duplicates beyond 1e-12 fail with the line number
    const std::string conflict =
        "&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 2 0 0\n0.5000001 2 1 0 0\n";
    try {
        parse(conflict);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
    // agreeing duplicates are fine
    CHECK_NOTHROW(parse("&FCI NORB=2,NELEC=2,MS2=0\n&END\n0.5 1 2 0 0\n0.5 2 1 0 0\n"));
    // slash-terminated header
    CHECK_NOTHROW(parse(" &FCI NORB=1,NELEC=1,MS2=1\n /\n0.5 1 1 0 0\n"));
}
