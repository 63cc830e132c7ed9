#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fixtures.hpp"
#include "orthorecon/slice_io.hpp"

namespace fs = std::filesystem;
using namespace orthorecon;

namespace {

const fs::path& scratch() {
    static const fs::path dir = [] {
        const fs::path d = fs::temp_directory_path() / ("orthorecon_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (scratch() / name).string(); }

// Runs the CLI with stdout and stderr captured to files; returns the exit code.
int cli(const std::string& args, const std::string& tag = "out") {
    const std::string cmd = std::string("\"") + ORTHORECON_CLI + "\" " + args + " > \"" + path(tag + ".stdout") +
                            "\" 2> \"" + path(tag + ".stderr") + "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

const char* kBox = R"('{"type":"box","min":[0.25,0.25,0.25],"max":[1.75,1.75,1.75]}')";
const char* kSphere = R"('{"type":"sphere","center":[1,1,1],"radius":0.75}')";

std::string box_doc() {
    static const std::string p = [] {
        const std::string out = path("box.json");
        REQUIRE(cli(std::string("slice --shape ") + kBox + " --planes x:0:1:3 --planes y:0:1:3 --planes z:0:1:3 --output " +
                    out) == 0);
        return out;
    }();
    return p;
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(cli("--help") == 0);
    CHECK(cli("reconstruct --help") == 0);
    CHECK(cli("") == 1);
    CHECK(cli("frobnicate") == 1);
    CHECK(cli("reconstruct") == 1); // --input missing
    CHECK(cli("reconstruct --input x.json --workers 0") == 1);
    CHECK(cli(std::string("slice --shape ") + kBox + " --planes z:0:0") == 1);
    CHECK(cli(std::string("slice --shape ") + kBox + " --planes q:0:1:3") == 1);
    CHECK(cli(std::string("slice --shape ") + kBox + " --planes z:0:1") == 1);
    CHECK(cli("slice --planes x:0:1:3 --planes y:0:1:3 --planes z:0:1:3") == 1); // no shape or mesh
    CHECK(cli("correspond --input " + box_doc() + " --method nearest") == 1);
}

TEST_CASE("slice then reconstruct the box") {
    const std::string obj = path("box.obj"), report = path("box_report.json");
    REQUIRE(cli("reconstruct --input " + box_doc() + " --output " + obj + " --report " + report) == 0);
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["nodePoints"] == 6);
    CHECK(j["arcs"] == 12);
    CHECK(j["polygons"] == 8);
    CHECK(j["histogram"]["3"] == 8);
    CHECK(j["topology"]["watertight"] == true);
    CHECK(j["topology"]["euler"] == 2);
    CHECK(j["unpaired"].empty());
    CHECK_FALSE(j.contains("nodes"));
    const Mesh m = read_obj(obj);
    CHECK(m.triangles.size() == 48);
    CHECK(slurp(obj).find('#') == std::string::npos);

    // report on stdout, optional dumps
    REQUIRE(cli("reconstruct --input " + box_doc() + " --dump-nodes --dump-polygons", "dump") == 0);
    const auto d = nlohmann::json::parse(slurp(path("dump.stdout")));
    CHECK(d["nodes"].size() == 6);
    CHECK(d["polygonDump"].size() == 8);

    REQUIRE(cli("reconstruct --input " + box_doc() + " --output " + path("cells.obj") + " --cell-comments") == 0);
    CHECK(slurp(path("cells.obj")).find("# cell ") != std::string::npos);
}

TEST_CASE("outputs do not depend on the worker count") {
    REQUIRE(cli(std::string("slice --shape ") + kSphere +
                " --planes x:0.125:0.25:8 --planes y:0.125:0.25:8 --planes z:0.125:0.25:8 --output " +
                path("sphere.json")) == 0);
    for (int w : {1, 4}) {
        const std::string tag = "w" + std::to_string(w);
        REQUIRE(cli("reconstruct --input " + path("sphere.json") + " --dump-polygons --cell-comments --workers " +
                        std::to_string(w) + " --output " + path(tag + ".obj") + " --report " + path(tag + ".json"),
                    tag) == 0);
        REQUIRE(cli("metrics --input " + path(tag + ".obj") + " --shape " + kSphere + " --samples 2000 --workers " +
                        std::to_string(w) + " --output " + path(tag + "_m.json"),
                    tag) == 0);
    }
    CHECK(slurp(path("w1.obj")) == slurp(path("w4.obj")));
    CHECK(slurp(path("w1.json")) == slurp(path("w4.json")));
    CHECK(slurp(path("w1_m.json")) == slurp(path("w4_m.json")));
    const auto m = nlohmann::json::parse(slurp(path("w1_m.json")));
    CHECK(m["watertight"] == true);
    CHECK(m["samples"] == 2000);
    CHECK(m["hausdorff"].get<double>() < 0.25 * std::sqrt(3.0));
}

TEST_CASE("metrics") {
    spit(path("tet.obj"), "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 3 2\nf 1 2 4\nf 2 3 4\nf 1 4 3\n");
    REQUIRE(cli("metrics --input " + path("tet.obj"), "tet") == 0);
    const auto t = nlohmann::json::parse(slurp(path("tet.stdout")));
    CHECK(t["euler"] == 2);
    CHECK_FALSE(t.contains("hausdorff"));
    REQUIRE(cli("metrics --input " + path("tet.obj") + " --reference " + path("tet.obj") + " --samples 100", "self") == 0);
    CHECK(nlohmann::json::parse(slurp(path("self.stdout")))["hausdorff"].get<double>() <= 1e-12);
    CHECK(cli("metrics --input " + path("tet.obj") + " --shape " + kSphere + " --samples 99") == 1);
    CHECK(cli("metrics --input " + path("tet.obj") + " --shape " + kSphere + " --reference " + path("tet.obj")) == 1);
    CHECK(cli("metrics --input " + path("missing.obj")) == 1);
    spit(path("bad.obj"), "v 0 0 0\nf 1 2 3\n");
    CHECK(cli("metrics --input " + path("bad.obj")) == 1);
}

TEST_CASE("histogram and correspond") {
    REQUIRE(cli("histogram --input " + box_doc(), "hist") == 0);
    CHECK(slurp(path("hist.stdout")) == "arcs,polygons\n3,8\n");

    REQUIRE(cli("correspond --input " + box_doc(), "orth") == 0);
    const auto o = nlohmann::json::parse(slurp(path("orth.stdout")));
    CHECK(o["method"] == "orthogonal");
    CHECK(o["components"] == 1);
    CHECK(o["edges"].size() == 3);

    REQUIRE(cli("correspond --input " + box_doc() + " --method overlap --axis x", "ov") == 0);
    CHECK(nlohmann::json::parse(slurp(path("ov.stdout")))["components"] == 1);
    REQUIRE(cli("correspond --input " + box_doc() + " --method mst --axis y", "mst") == 0);
    CHECK(nlohmann::json::parse(slurp(path("mst.stdout")))["components"] == 1);
}

TEST_CASE("input errors map to exit codes") {
    // a plane touching the sphere
    CHECK(cli(std::string("slice --shape ") + kSphere + " --planes x:0:0.25:9 --planes y:0:0.25:9 --planes z:0:0.25:9") ==
          2);

    spit(path("garbage.json"), "{ not json");
    CHECK(cli("reconstruct --input " + path("garbage.json")) == 1);
    CHECK(cli("reconstruct --input " + path("nothing.json")) == 1);
    spit(path("empty.json"), R"({"sets":[]})");
    CHECK(cli("reconstruct --input " + path("empty.json")) == 1);

    // a lone contour whose crossings have no partner
    auto doc = read_slice_document(box_doc());
    doc.set(Axis::Z)[0].contours.push_back(
        fixtures::contour(Axis::Z, 0, 0, {{0.8, -0.2}, {1.2, -0.2}, {1.2, 0.2}, {0.8, 0.2}}));
    spit(path("lone.json"), format_slice_document(doc));
    CHECK(cli("reconstruct --input " + path("lone.json") + " --strict") == 2);
    REQUIRE(cli("reconstruct --input " + path("lone.json"), "loose") == 0);
    const auto j = nlohmann::json::parse(slurp(path("loose.stdout")));
    CHECK(j["unpaired"].size() == 4);
    CHECK(j["nonManifoldCells"].size() == 8);
    CHECK(j["topology"]["watertight"] == false);
}
