#include "lbpx/errors.hpp"
#include "lbpx/eval.hpp"
#include "lbpx/serialize.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <random>

using namespace lbpx;
namespace fs = std::filesystem;

namespace {

std::string manifest_error(std::string_view csv) {
    try {
        load_manifest(csv);
    } catch (const ManifestError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("load_manifest") {
    const auto m = load_manifest("path,label,split\na.pgm,happy,train\nb.pgm,sad,test\n");
    REQUIRE(m.entries.size() == 2);
    CHECK(m.entries[0] == ManifestEntry{"a.pgm", "happy", Split::train});
    CHECK(m.entries[1] == ManifestEntry{"b.pgm", "sad", Split::test});
    CHECK(m.split(Split::test).size() == 1);

    CHECK(load_manifest("path,label,split\r\na.pgm,x,train\r\n\r\n").entries.size() == 1);
    CHECK(load_manifest("path,label,split").entries.empty());

    CHECK(manifest_error("path,label,split\na.pgm,happy,validate\n").find("row 2") != std::string::npos);
    CHECK(manifest_error("path,label,split\na.pgm,happy,validate\n").find("validate") != std::string::npos);
    CHECK(manifest_error("path,label,split\na.pgm,x,train\na.pgm,y,test\n").find("row 3") != std::string::npos);
    CHECK(manifest_error("path,label,split\na.pgm,x,train\na.pgm,y,test\n").find("duplicate") != std::string::npos);
    CHECK(manifest_error("a.pgm,x,train\n").find("header") != std::string::npos);
    CHECK(manifest_error("").find("header") != std::string::npos);
    CHECK(manifest_error("path,label,split\na.pgm,x\n").find("row 2") != std::string::npos);
    CHECK(manifest_error("path,label,split\na.pgm,,train\n").find("empty label") != std::string::npos);
}

TEST_CASE("evaluate on a self-matching corpus") {
    const auto dir = testing::fresh_temp_dir("eval_self");
    std::mt19937 rng(10);
    std::string csv = "path,label,split\n";
    for (const char* label : {"anger", "joy", "calm"}) {
        const auto img = testing::random_image(rng, 20, 20);
        write_pgm_file(dir / (std::string(label) + ".pgm"), img);
        write_pgm_file(dir / (std::string(label) + "_copy.pgm"), img);
        csv += std::string(label) + ".pgm," + label + ",train\n";
        csv += std::string(label) + "_copy.pgm," + label + ",test\n";
    }
    const auto report = evaluate(load_manifest(csv), EvalConfig{}, dir);
    CHECK(report.accuracy == 1.0);
    CHECK(report.n_test == 3);
    CHECK(report.classes == std::vector<std::string>{"anger", "calm", "joy"});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(report.confusion[i][j] == (i == j ? 1u : 0u));
}

TEST_CASE("evaluate on textures: confusion bookkeeping and order invariance") {
    const auto dir = testing::fresh_temp_dir("eval_tex");
    const auto manifest_path = testing::write_texture_corpus(dir, 6, 32, 20, 5);
    auto manifest = load_manifest(read_file(manifest_path));
    const auto report = evaluate(manifest, EvalConfig{}, dir, 2);

    std::uint64_t total = 0;
    std::uint64_t trace = 0;
    for (std::size_t i = 0; i < report.confusion.size(); ++i) {
        std::uint64_t row = 0;
        for (const auto c : report.confusion[i]) row += c;
        CHECK(row == 6); // six test images per class
        total += row;
        trace += report.confusion[i][i];
    }
    CHECK(total == report.n_test);
    CHECK(report.accuracy == static_cast<double>(trace) / static_cast<double>(report.n_test));
    CHECK(report.accuracy >= 0.95);

    std::mt19937 rng(3);
    std::shuffle(manifest.entries.begin(), manifest.entries.end(), rng);
    const auto shuffled = evaluate(manifest, EvalConfig{}, dir, 1);
    CHECK(shuffled.accuracy == report.accuracy);
    CHECK(shuffled.confusion == report.confusion);

    SUBCASE("report JSON round trip") {
        auto r = report;
        r.fps = 1234.5678901234;
        r.config.region_weights = std::vector<double>(9, 0.5);
        const auto text = dump_pretty(report_to_json(r));
        CHECK(report_from_json(Json::parse(text)) == r);
        CHECK(report_from_json(report_to_json(report)) == report);
    }
}

TEST_CASE("evaluate errors") {
    const auto dir = testing::fresh_temp_dir("eval_err");
    std::mt19937 rng(11);
    write_pgm_file(dir / "a.pgm", testing::random_image(rng, 16, 16));
    write_pgm_file(dir / "b.pgm", testing::random_image(rng, 16, 16));

    try {
        evaluate(load_manifest("path,label,split\na.pgm,x,train\nmissing.pgm,x,test\n"), EvalConfig{}, dir);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.kind() == EvaluationError::Kind::UnreadableFile);
        CHECK(std::string(e.what()).find("missing.pgm") != std::string::npos);
    }
    try {
        evaluate(load_manifest("path,label,split\na.pgm,x,train\nb.pgm,y,test\n"), EvalConfig{}, dir);
        FAIL("expected EvaluationError");
    } catch (const EvaluationError& e) {
        CHECK(e.kind() == EvaluationError::Kind::UnknownLabel);
    }
    CHECK_THROWS_AS(evaluate(load_manifest("path,label,split\na.pgm,x,train\n"), EvalConfig{}, dir), EvaluationError);
    CHECK_THROWS_AS(evaluate(load_manifest("path,label,split\na.pgm,x,test\n"), EvalConfig{}, dir), EvaluationError);
}

TEST_CASE("benchmark_fps") {
    std::mt19937 rng(12);
    const auto img = testing::random_image(rng, 64, 48);
    const auto r = benchmark_fps(img, LbpParams{8, 1.0, Sampling::square3x3, MappingMode::raw}, 20);
    CHECK(r.fps > 0.0);
    CHECK(r.ms_per_frame == doctest::Approx(1000.0 / r.fps).epsilon(1e-12));
    CHECK(r.iterations == 20);
    CHECK(r.threads == 1);
    CHECK(r.width == 64);
    const auto again = benchmark_fps(img, LbpParams{8, 1.0, Sampling::square3x3, MappingMode::raw}, 5, 3);
    CHECK(again.checksum == r.checksum);
    CHECK(again.threads == 3);
    CHECK_THROWS_AS(benchmark_fps(img, LbpParams{}, 0), ParameterError);
}
