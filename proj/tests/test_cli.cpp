#include "lbpx/cli.hpp"
#include "lbpx/lbp.hpp"
#include "lbpx/serialize.hpp"
#include "synthetic.hpp"

#include <doctest.h>

#include <random>
#include <sstream>

using namespace lbpx;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct Workspace {
    fs::path dir;

    explicit Workspace(const std::string& name) : dir(testing::fresh_temp_dir(name)) {
        std::mt19937 rng(42);
        write_pgm_file(dir / "happy.pgm", testing::random_image(rng, 40, 40));
        write_pgm_file(dir / "sad.pgm", testing::random_image(rng, 40, 40, 60, 120));
        write_file(dir / "happy_only.csv", "path,label,split\nhappy.pgm,happy,train\n");
        write_file(dir / "both.csv", "path,label,split\nhappy.pgm,happy,train\nsad.pgm,sad,train\n");
    }

    std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

} // namespace

TEST_CASE("cli map writes the label map") {
    const Workspace ws("cli_map");
    const auto r = run({"map", "--input", ws / "happy.pgm", "--output", ws / "happy_lbp.pgm", "--neighbors", "8",
                        "--sampling", "square3x3", "--mapping", "raw"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    const auto written = read_pgm_file(ws / "happy_lbp.pgm");
    const auto expected = lbp_map_to_image(lbp_map(read_pgm_file(ws / "happy.pgm"), LbpParams{}));
    CHECK(written == expected);

    const auto to_stdout = run({"map", "--input", ws / "happy.pgm", "--mapping", "raw"});
    CHECK(to_stdout.code == 0);
    CHECK(to_stdout.out == save_pgm(expected));
}

TEST_CASE("cli train then classify an exact training image") {
    const Workspace ws("cli_classify");
    const auto t = run({"train", "--manifest", ws / "happy_only.csv", "--output", ws / "m.json"});
    REQUIRE(t.code == 0);
    const auto c = run({"classify", "--model", ws / "m.json", "--input", ws / "happy.pgm"});
    CHECK(c.code == 0);
    CHECK(c.out == "happy\nhappy 0.000000\n");

    REQUIRE(run({"train", "--manifest", ws / "both.csv", "--output", ws / "m2.json", "--grid", "2x2"}).code == 0);
    const auto c2 = run({"classify", "--model", ws / "m2.json", "--input", ws / "sad.pgm", "--metric", "l1"});
    CHECK(c2.code == 0);
    CHECK(c2.out.rfind("sad\nhappy ", 0) == 0);
    CHECK(c2.out.find("\nsad 0.000000\n") != std::string::npos);

    const auto model = parse_model(read_file(ws / "m2.json"));
    CHECK(model.grid_rows == 2);
    CHECK(model.params.mapping == MappingMode::u2);
}

TEST_CASE("cli exit codes") {
    const Workspace ws("cli_exit");
    const auto missing = run({"train", "--manifest", ws / "missing.csv"});
    CHECK(missing.code == kExitIo);
    CHECK(missing.err.find("missing.csv") != std::string::npos);

    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"map", "--input", ws / "happy.pgm", "--unknown-flag"}).code == kExitUsage);
    CHECK(run({"map", "--input", ws / "happy.pgm", "--mapping", "uniform"}).code == kExitUsage);
    CHECK(run({"map", "--input", ws / "happy.pgm", "--neighbors", "4"}).code == kExitUsage);
    CHECK(run({"describe", "--input", ws / "happy.pgm", "--grid", "3by3"}).code == kExitUsage);

    write_file(ws / "bad.pgm", "P5\n4 4\n255\nabc");
    const auto bad = run({"map", "--input", ws / "bad.pgm"});
    CHECK(bad.code == kExitIo);
    CHECK(bad.err.find("truncated") != std::string::npos);

    // model trained with u2 vs. a corrupted template length
    REQUIRE(run({"train", "--manifest", ws / "both.csv", "--output", ws / "m.json"}).code == 0);
    auto j = Json::parse(read_file(ws / "m.json"));
    j["classes"][0]["template"].erase(0);
    write_file(ws / "broken.json", j.dump());
    CHECK(run({"classify", "--model", ws / "broken.json", "--input", ws / "happy.pgm"}).code == kExitMismatch);

    write_file(ws / "unknown_label.csv", "path,label,split\nhappy.pgm,happy,train\nsad.pgm,sad,test\n");
    CHECK(run({"evaluate", "--manifest", ws / "unknown_label.csv"}).code == kExitMismatch);

    CHECK(run({"detect", "--scene", ws / "happy.pgm", "--model", ws / "m.json", "--window", "20x20", "--threshold",
               "1"})
              .code == kExitMismatch);
    CHECK(run({"classify", "--model", ws / "m.json", "--input", ws / "happy.pgm", "--metric", "wchi2"}).code ==
          kExitUsage);
}

TEST_CASE("cli help for every subcommand") {
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"map", {"--input", "--output", "--neighbors", "--radius", "--sampling", "--mapping"}},
        {"describe", {"--input", "--output", "--grid", "--neighbors", "--radius", "--sampling", "--mapping"}},
        {"train", {"--manifest", "--output", "--grid", "--weights", "--neighbors", "--mapping"}},
        {"classify", {"--model", "--input", "--output", "--metric"}},
        {"evaluate", {"--manifest", "--output", "--grid", "--metric", "--weights", "--bench-iterations"}},
        {"detect", {"--scene", "--model", "--window", "--stride", "--threshold", "--nms-iou", "--max-detections",
                    "--output"}},
        {"bench", {"--input", "--width", "--height", "--seed", "--iterations", "--threads", "--json"}},
    };
    for (const auto& [cmd, flags] : commands) {
        CAPTURE(cmd);
        const auto r = run({cmd, "--help"});
        CHECK(r.code == 0);
        for (const auto& f : flags) CHECK(r.out.find(f) != std::string::npos);
    }
    const auto top = run({"--help"});
    CHECK(top.code == 0);
    for (const char* cmd : {"map", "describe", "train", "classify", "evaluate", "detect", "bench"})
        CHECK(top.out.find(cmd) != std::string::npos);
}

TEST_CASE("cli describe, evaluate, detect and bench outputs") {
    const Workspace ws("cli_outputs");
    const auto d = run({"describe", "--input", ws / "happy.pgm", "--grid", "2x3", "--mapping", "riu2"});
    REQUIRE(d.code == 0);
    const auto desc = descriptor_from_json(Json::parse(d.out));
    CHECK(desc.grid_rows == 2);
    CHECK(desc.grid_cols == 3);
    CHECK(desc.values.size() == 6u * 10u);

    write_file(ws / "eval.csv", "path,label,split\nhappy.pgm,happy,train\nsad.pgm,sad,train\nhappy.pgm_missing,happy,test\n");
    CHECK(run({"evaluate", "--manifest", ws / "eval.csv"}).code == kExitIo);
    write_file(ws / "eval.csv", "path,label,split\nhappy.pgm,happy,train\nsad.pgm,sad,test\nsad2.pgm,sad,train\n");
    fs::copy_file(ws.dir / "sad.pgm", ws.dir / "sad2.pgm");
    const auto e = run({"evaluate", "--manifest", ws / "eval.csv", "--bench-iterations", "2"});
    REQUIRE(e.code == 0);
    const auto report = report_from_json(Json::parse(e.out));
    CHECK(report.accuracy == 1.0);
    CHECK(report.fps.has_value());

    std::mt19937 rng(8);
    const auto patch = testing::face_patch(rng, 32, 32);
    auto scene = testing::random_image(rng, 96, 80);
    testing::paste(scene, patch, 40, 24);
    write_pgm_file(ws.dir / "face.pgm", patch);
    write_pgm_file(ws.dir / "scene.pgm", scene);
    write_file(ws / "face.csv", "path,label,split\nface.pgm,face,train\n");
    REQUIRE(run({"train", "--manifest", ws / "face.csv", "--output", ws / "face.json"}).code == 0);
    const auto det = run({"detect", "--scene", ws / "scene.pgm", "--model", ws / "face.json", "--window", "32x32",
                          "--stride", "4", "--threshold", "1000", "--max-detections", "3"});
    REQUIRE(det.code == 0);
    CHECK(det.out.rfind(R"({"x":40,"y":24,"w":32,"h":32,"score":0.000000})", 0) == 0);
    CHECK(std::count(det.out.begin(), det.out.end(), '\n') <= 3);

    const auto b = run({"bench", "--width", "80", "--height", "60", "--iterations", "3"});
    REQUIRE(b.code == 0);
    CHECK(b.out.find("fps ") != std::string::npos);
    CHECK(b.out.find("ms_per_frame ") != std::string::npos);
    CHECK(b.out.find("mapping=raw") != std::string::npos);
    const auto bj = run({"bench", "--width", "80", "--height", "60", "--iterations", "3", "--json", "--threads", "2"});
    REQUIRE(bj.code == 0);
    const auto j = Json::parse(bj.out);
    CHECK(j["fps"].get<double>() > 0.0);
    CHECK(j["threads"] == 2);
}
