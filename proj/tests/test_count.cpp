#include <doctest.h>

#include "helpers.hpp"

using namespace zetakit;
using zetakit::test::data_path;

namespace {

VarietyDescriptor variety(const std::string& text) { return parse_variety_text(text, "inline"); }

const char* kAffineLineF3 = "p=3\na=1\nambient=affine\nn=1\nvars=t\n";
const char* kP1F2 = "p=2\na=1\nambient=projective\nn=1\nvars=u,v\n";
const char* kA2F2 = "p=2\na=1\nambient=affine\nn=2\nvars=u,v\n";

// independent slow oracle: count the projective curve y^2 z = x^3 + x z^2 +
// z^3 over F_{5^k} by direct evaluation over all normalized representatives
long elliptic_oracle_count(int k) {
    Field K = make_extension_field(5, k);
    MultiPoly eq = parse_polynomial("y^2*z - x^3 - x*z^2 - z^3", {"x", "y", "z"});
    long count = 0;
    auto check = [&](long xi, long yi, long zi) {
        FieldElement x{K, fx_element(*K, xi)}, y{K, fx_element(*K, yi)}, z{K, fx_element(*K, zi)};
        if (fx_is_zero(evaluate_polynomial(eq, {x, y, z}).coords)) ++count;
    };
    for (long y = 0; y < K->q; ++y)
        for (long z = 0; z < K->q; ++z) check(1, y, z);  // x = 1
    for (long z = 0; z < K->q; ++z) check(0, 1, z);      // x = 0, y = 1
    check(0, 0, 1);
    return count;
}

}  // namespace

TEST_CASE("closed-form point counts") {
    EnumConfig cfg;
    VarietyDescriptor a1 = variety(kAffineLineF3);
    for (int k = 1; k <= 4; ++k)
        CHECK(count_points(a1, k, cfg) == zz_pow(3, (unsigned long)k).get_si());

    VarietyDescriptor p1 = variety(kP1F2);
    for (int k = 1; k <= 6; ++k)
        CHECK(count_points(p1, k, cfg) == zz_pow(2, (unsigned long)k).get_si() + 1);

    VarietyDescriptor a2 = variety(kA2F2);
    PointCountSequence seq = count_sequence(a2, 3, cfg);
    CHECK(seq.counts == std::vector<long>{4, 16, 64});

    // P^1 over F_3 to order 2
    VarietyDescriptor p1f3 = load_variety_file(data_path("p1_f3.var"));
    PointCountSequence s3 = count_sequence(p1f3, 2, cfg);
    CHECK(s3.counts == std::vector<long>{4, 10});
}

TEST_CASE("elliptic curve counts match the direct-evaluation oracle") {
    EnumConfig cfg;
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    long n1 = elliptic_oracle_count(1);
    long n2 = elliptic_oracle_count(2);
    CHECK(n1 == 9);   // 8 affine points plus infinity
    CHECK(n2 == 27);
    CHECK(count_points(E, 1, cfg) == n1);
    CHECK(count_points(E, 2, cfg) == n2);
}

TEST_CASE("projective space by enumeration equals the closed form") {
    EnumConfig cfg;
    for (long q : {2L, 3L, 5L}) {
        std::string text = "p=" + std::to_string(q) + "\na=1\nambient=projective\nn=2\nvars=u,v,w\n";
        VarietyDescriptor p2 = variety(text);
        for (int k = 1; k <= 2; ++k) {
            ZZ qk = zz_pow(q, (unsigned long)k);
            ZZ expect = (qk * qk * qk - 1) / (qk - 1);
            CHECK(ZZ(count_points(p2, k, cfg)) == expect);
        }
    }
}

TEST_CASE("exclusion consistency: open plus excluded equals ambient") {
    EnumConfig cfg;
    VarietyDescriptor open = load_variety_file(data_path("a1_minus01_f5.var"));
    VarietyDescriptor locus = variety("p=5\na=1\nambient=affine\nn=1\nvars=t\nt^2 - t\n");
    for (int k = 1; k <= 4; ++k) {
        long ambient = zz_pow(5, (unsigned long)k).get_si();
        CHECK(count_points(open, k, cfg) + count_points(locus, k, cfg) == ambient);
    }
}

TEST_CASE("closed points: degrees, counts, divisor-sum identity") {
    EnumConfig cfg;
    VarietyDescriptor a1f2 = variety("p=2\na=1\nambient=affine\nn=1\nvars=t\n");
    auto pts = enumerate_closed_points(a1f2, 2, cfg);
    int deg1 = 0, deg2 = 0;
    for (const auto& x : pts) (x.degree == 1 ? deg1 : deg2)++;
    CHECK(deg1 == 2);
    CHECK(deg2 == 1);  // 2*1 + 2*1 = 4 = N_2

    VarietyDescriptor open = load_variety_file(data_path("a1_minus01_f5.var"));
    auto pts5 = enumerate_closed_points(open, 1, cfg);
    CHECK(pts5.size() == 3);  // {2, 3, 4}

    VarietyDescriptor p1 = variety(kP1F2);
    auto ppts = enumerate_closed_points(p1, 1, cfg);
    CHECK(ppts.size() == 3);  // {0, 1, infinity}

    // divisor-sum identity N_d = sum_{e|d} e c_e on an elliptic curve
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    PointCountSequence seq = count_sequence(E, 4, cfg);
    auto c = closed_point_counts_from_sequence(seq);
    auto closed = enumerate_closed_points(E, 4, cfg);
    std::vector<long> by_degree(5, 0);
    for (const auto& x : closed) by_degree[(size_t)x.degree]++;
    for (int e = 1; e <= 4; ++e) CHECK(by_degree[(size_t)e] == c[(size_t)e]);
    for (int d = 1; d <= 4; ++d) {
        long acc = 0;
        for (int e = 1; e <= d; ++e)
            if (d % e == 0) acc += e * by_degree[(size_t)e];
        CHECK(acc == seq.counts[(size_t)d - 1]);
    }
}

TEST_CASE("closed point representatives are orbit-least and deterministic") {
    EnumConfig cfg;
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    auto once = enumerate_closed_points(E, 2, cfg);
    auto twice = enumerate_closed_points(E, 2, cfg);
    REQUIRE(once.size() == twice.size());
    for (size_t i = 0; i < once.size(); ++i) {
        CHECK(once[i].degree == twice[i].degree);
        CHECK(once[i].rep == twice[i].rep);
        CHECK(closed_point_key(once[i]) == closed_point_key(twice[i]));
    }
}

TEST_CASE("determinism: workers do not change counts") {
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    EnumConfig one{1L << 28, 1}, many{1L << 28, 3};
    CHECK(count_points(E, 2, one) == count_points(E, 2, many));
    CHECK(count_points(E, 3, one) == count_points(E, 3, many));
}

TEST_CASE("budget exceeded is an error, never silent truncation") {
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    EnumConfig tiny{10, 1};
    CHECK_THROWS_AS(count_points(E, 2, tiny), BudgetError);
    try {
        count_sequence(E, 3, tiny);
        CHECK(false);
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("largest completed k") != std::string::npos);
    }
}

TEST_CASE("rational point enumeration matches counts") {
    EnumConfig cfg;
    VarietyDescriptor p1 = variety(kP1F2);
    auto pts = enumerate_rational_points(instance_over_extension(p1, 1), cfg);
    CHECK(pts.size() == 3);
    VarietyDescriptor E = load_variety_file(data_path("elliptic_f5.var"));
    auto epts = enumerate_rational_points(instance_over_extension(E, 1), cfg);
    CHECK((long)epts.size() == count_points(E, 1, cfg));
}
