#include "lbpx/classify.hpp"
#include "lbpx/errors.hpp"
#include "lbpx/serialize.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <random>

using namespace lbpx;

namespace {

std::vector<double> random_histogram(std::mt19937& rng, std::size_t n, double zero_prob = 0.3) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> h(n);
    double total = 0.0;
    for (auto& v : h) {
        v = u(rng) < zero_prob ? 0.0 : u(rng);
        total += v;
    }
    if (total == 0.0) h[0] = total = 1.0;
    for (auto& v : h) v /= total;
    return h;
}

GridDescriptor descriptor(std::vector<double> values, int rows = 1, int cols = 1, std::uint32_t bins = 0) {
    GridDescriptor d;
    d.grid_rows = rows;
    d.grid_cols = cols;
    d.bin_count = bins ? bins : static_cast<std::uint32_t>(values.size() / static_cast<std::size_t>(rows * cols));
    d.params = LbpParams{8, 1.0, Sampling::square3x3, MappingMode::u2};
    d.values = std::move(values);
    return d;
}

} // namespace

TEST_CASE("distance examples") {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<double> b{0.0, 1.0};
    CHECK(distance(a, b, Metric::chi2) == 2.0);
    CHECK(distance(a, a, Metric::chi2) == 0.0);
    CHECK(distance(a, b, Metric::l1) == 2.0);
    CHECK(distance(a, b, Metric::intersect) == 1.0);
    CHECK(distance(a, a, Metric::intersect) == 0.0);
    const std::vector<double> w{1.0};
    CHECK(distance(a, b, Metric::wchi2, w) == 2.0);

    // regions (0.5,0.5 | 1,0) vs (0.5,0.5 | 0,1): only region 2 contributes
    const std::vector<double> c{0.5, 0.5, 1.0, 0.0};
    const std::vector<double> d{0.5, 0.5, 0.0, 1.0};
    const std::vector<double> w2{10.0, 3.0};
    CHECK(distance(c, d, Metric::wchi2, w2) == 6.0);
    CHECK(distance(c, d, Metric::intersect) == doctest::Approx(0.5));

    CHECK_THROWS_AS(distance(a, c, Metric::chi2), ParameterError);
    CHECK_THROWS_AS(distance(a, b, Metric::wchi2), ParameterError);
    const std::vector<double> bad{-1.0};
    CHECK_THROWS_AS(distance(a, b, Metric::wchi2, bad), ParameterError);
    const std::vector<double> w3{1.0, 1.0, 1.0};
    CHECK_THROWS_AS(distance(c, d, Metric::wchi2, w3), ParameterError);
}

TEST_CASE("distance properties on random histograms") {
    std::mt19937 rng(77);
    for (int n = 0; n < 300; ++n) {
        const auto a = random_histogram(rng, 59);
        const auto b = random_histogram(rng, 59);
        for (auto m : {Metric::chi2, Metric::intersect, Metric::l1}) {
            const double ab = distance(a, b, m);
            REQUIRE(ab >= 0.0);
            REQUIRE(std::abs(ab - distance(b, a, m)) <= 1e-12);
            REQUIRE(distance(a, a, m) == 0.0);
        }
        const std::vector<double> ones(1, 1.0);
        REQUIRE(std::abs(distance(a, b, Metric::wchi2, ones) - distance(a, b, Metric::chi2)) <= 1e-12);
    }
}

TEST_CASE("build_templates") {
    const auto h1 = descriptor({0.2, 0.8});
    const auto h2 = descriptor({0.6, 0.4});
    const auto h3 = descriptor({1.0, 0.0});

    SUBCASE("one sample per class") {
        const std::vector<LabeledDescriptor> s{{"sad", h1}, {"happy", h3}};
        const auto m = build_templates(s);
        REQUIRE(m.classes.size() == 2);
        CHECK(m.classes[0].label == "happy");
        CHECK(m.classes[0].descriptor.values == h3.values);
        CHECK(m.classes[1].label == "sad");
        CHECK(m.classes[1].descriptor.values == h1.values);
        CHECK(m.grid_rows == 1);
        CHECK_NOTHROW(validate_model(m));
    }

    SUBCASE("mean of two samples") {
        const std::vector<LabeledDescriptor> s{{"a", h1}, {"a", h2}};
        const auto m = build_templates(s);
        REQUIRE(m.classes.size() == 1);
        CHECK(m.classes[0].descriptor.values[0] == doctest::Approx(0.4));
        CHECK(m.classes[0].descriptor.values[1] == doctest::Approx(0.6));
    }

    SUBCASE("regions renormalized after averaging") {
        const auto x = descriptor({0.5, 0.5, 0.0, 0.0}, 1, 2, 2); // empty second region
        const auto y = descriptor({1.0, 0.0, 0.3, 0.7}, 1, 2, 2);
        const std::vector<LabeledDescriptor> s{{"a", x}, {"a", y}};
        const auto t = build_templates(s).classes[0].descriptor.values;
        CHECK(t[0] + t[1] == doctest::Approx(1.0));
        CHECK(t[2] + t[3] == doctest::Approx(1.0));
        CHECK(t[2] == doctest::Approx(0.3));
    }

    SUBCASE("errors") {
        CHECK_THROWS_AS(build_templates({}), TrainingError);
        const std::vector<LabeledDescriptor> mixed{{"a", h1}, {"b", descriptor({0.5, 0.5, 0.5, 0.5}, 2, 1, 2)}};
        CHECK_THROWS_AS(build_templates(mixed), TrainingError);
        auto other_params = h2;
        other_params.params.mapping = MappingMode::riu2;
        const std::vector<LabeledDescriptor> mixed2{{"a", h1}, {"b", other_params}};
        CHECK_THROWS_AS(build_templates(mixed2), TrainingError);
        const std::vector<LabeledDescriptor> unlabeled{{"", h1}};
        CHECK_THROWS_AS(build_templates(unlabeled), TrainingError);
    }
}

TEST_CASE("predict") {
    const std::vector<LabeledDescriptor> s{{"happy", descriptor({0.9, 0.1})}, {"sad", descriptor({0.1, 0.9})}};
    const auto m = build_templates(s);

    const auto exact = predict(m, descriptor({0.9, 0.1}));
    CHECK(exact.label == "happy");
    REQUIRE(exact.scores.size() == 2);
    CHECK(exact.scores[0].first == "happy");
    CHECK(exact.scores[0].second == 0.0);
    CHECK(exact.scores[1].first == "sad");

    // equidistant query: tie resolves to the smaller label
    const auto tie = predict(m, descriptor({0.5, 0.5}));
    CHECK(tie.scores[0].second == tie.scores[1].second);
    CHECK(tie.label == "happy");
    const std::vector<LabeledDescriptor> rev{{"zeta", descriptor({0.9, 0.1})}, {"alpha", descriptor({0.1, 0.9})}};
    CHECK(predict(build_templates(rev), descriptor({0.5, 0.5})).label == "alpha");

    CHECK_THROWS_AS(predict(m, descriptor({0.3, 0.3, 0.4})), ModelMismatchError);
    auto wrong = descriptor({0.9, 0.1});
    wrong.params.mapping = MappingMode::raw;
    CHECK_THROWS_AS(predict(m, wrong), ModelMismatchError);
    CHECK_THROWS_AS(predict(m, descriptor({0.9, 0.1}), Metric::wchi2), ParameterError);

    auto weighted = m;
    set_region_weights(weighted, {2.0});
    CHECK(predict(weighted, descriptor({0.8, 0.2}), Metric::wchi2).label == "happy");
    CHECK_THROWS_AS(set_region_weights(weighted, {1.0, 1.0}), ParameterError);
    CHECK_THROWS_AS(set_region_weights(weighted, {-1.0}), ParameterError);
}

TEST_CASE("predict is invariant to uniform rescaling of distances") {
    // l1 distances scale by k when both query and templates scale by k.
    std::mt19937 rng(5);
    for (int n = 0; n < 50; ++n) {
        std::vector<LabeledDescriptor> s;
        for (const char* label : {"a", "b", "c", "d"}) s.emplace_back(label, descriptor(random_histogram(rng, 10)));
        const auto m = build_templates(s);
        const auto q = descriptor(random_histogram(rng, 10));
        const auto base = predict(m, q, Metric::l1);
        auto scaled = m;
        auto qs = q;
        for (auto& c : scaled.classes)
            for (auto& v : c.descriptor.values) v *= 4.0;
        for (auto& v : qs.values) v *= 4.0;
        const auto p = predict(scaled, qs, Metric::l1);
        REQUIRE(p.label == base.label);
        for (std::size_t i = 0; i < p.scores.size(); ++i)
            REQUIRE(p.scores[i].second == doctest::Approx(4.0 * base.scores[i].second));
    }
}

TEST_CASE("model JSON round trip") {
    std::mt19937 rng(21);
    for (int n = 0; n < 20; ++n) {
        std::vector<LabeledDescriptor> s;
        for (const char* label : {"neutral", "happy", "surprise"}) {
            s.emplace_back(label, descriptor(random_histogram(rng, 59 * 4), 2, 2, 59));
        }
        auto m = build_templates(s);
        if (n % 2) set_region_weights(m, {1.0, 0.5, 2.0, 0.25});
        const auto text = serialize_model(m);
        REQUIRE(parse_model(text) == m);
        REQUIRE(serialize_model(parse_model(text)) == text);
    }
}

TEST_CASE("model JSON schema") {
    const std::vector<LabeledDescriptor> s{{"face", descriptor({0.25, 0.75}, 1, 1, 2)}};
    auto m = build_templates(s);
    m.classes[0].descriptor.bin_count = 59;
    m.classes[0].descriptor.values.assign(59, 1.0 / 59);
    const auto j = model_to_json(m);
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"format_version", "params", "grid", "classes"});
    CHECK(j["format_version"] == 1);
    CHECK(j["params"]["sampling"] == "square3x3");
    CHECK(j["params"]["mapping"] == "u2");
    CHECK(j["grid"] == Json::array({1, 1}));
    CHECK(j["classes"][0]["label"] == "face");

    CHECK_THROWS_AS(parse_model("{not json"), SchemaError);
    CHECK_THROWS_AS(parse_model(R"({"format_version": 2})"), SchemaError);
    auto bad = j;
    bad["classes"][0]["template"] = Json::array({0.5, 0.5});
    CHECK_THROWS_AS(model_from_json(bad), ModelMismatchError);
    auto dup = j;
    dup["classes"].push_back(dup["classes"][0]);
    CHECK_THROWS_AS(model_from_json(dup), ModelMismatchError);
    auto badmap = j;
    badmap["params"]["mapping"] = "uniform";
    CHECK_THROWS_AS(model_from_json(badmap), SchemaError);
}

TEST_CASE("metric names") {
    for (auto m : {Metric::chi2, Metric::wchi2, Metric::intersect, Metric::l1}) CHECK(parse_metric(to_string(m)) == m);
    CHECK_FALSE(parse_metric("cosine").has_value());
}
