// annoplot.cpp - command-line front end: render a spec to SVG, or validate it.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "anno/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

void print_diag(const anno::Diagnostic& d, bool as_error = false) {
    nlohmann::json j;
    j["severity"] =
        (as_error || d.severity == anno::Severity::Error) ? "error" : "warning";
    j["code"] = d.code;
    j["path"] = d.path;
    j["message"] = d.message;
    std::cerr << j.dump() << "\n";
}

int fail_io(const std::string& path, const std::string& what) {
    print_diag({anno::Severity::Error, "IoError", "", what + ": " + path});
    return kExitIo;
}

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << content;
    return bool(out);
}

struct Args {
    std::string spec_path;
    std::string data_path;
    std::string out_path;
    double grid_size = anno::kDefaultCellSize;
    int placement_budget = anno::kDefaultPlacementBudget;
    bool dump_scene = false;
    bool strict = false;
};

int run(const Args& a, bool render) {
    auto text = read_file(a.spec_path);
    if (!text) return fail_io(a.spec_path, "cannot read spec");

    anno::CompileOptions opts;
    opts.grid_size = a.grid_size;
    opts.placement_budget = a.placement_budget;
    opts.dump_scene = a.dump_scene;
    if (!a.data_path.empty()) opts.data_override = a.data_path;
    std::string base_dir = std::filesystem::path(a.spec_path).parent_path().string();

    anno::DiagnosticSink sink;
    anno::CompileOutput out;
    try {
        out = anno::compile_spec_text(*text, base_dir, opts, sink);
    } catch (const anno::SpecError& e) {
        for (const anno::Diagnostic& d : sink.items()) print_diag(d);
        print_diag(e.diagnostic());
        return e.diagnostic().code == "IoError" ? kExitIo : kExitValidation;
    }

    for (const anno::Diagnostic& d : sink.items()) print_diag(d, a.strict);
    if (a.strict && !sink.items().empty()) return kExitValidation;

    if (render) {
        if (!write_file(a.out_path, out.svg)) return fail_io(a.out_path, "cannot write output");
        if (a.dump_scene) {
            std::filesystem::path scene_path(a.out_path);
            scene_path.replace_extension(".scene.json");
            if (!write_file(scene_path.string(), out.scene_json))
                return fail_io(scene_path.string(), "cannot write scene dump");
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Declarative chart annotation compiler"};
    app.require_subcommand(1);
    Args args;

    CLI::App* render = app.add_subcommand("render", "Compile a spec to SVG");
    render->add_option("--spec", args.spec_path, "Spec JSON file")->required();
    render->add_option("--data", args.data_path, "Data file overriding the spec's url");
    render->add_option("--out", args.out_path, "Output SVG path")->required();
    render->add_option("--grid-size", args.grid_size, "Occupancy cell size in px")
        ->check(CLI::Range(1.0, 1e6));
    render->add_option("--placement-budget", args.placement_budget,
                       "Max placement evaluations before fallback")
        ->check(CLI::Range(1, 1 << 30));
    render->add_flag("--dump-scene", args.dump_scene, "Also write <out>.scene.json");
    render->add_flag("--strict", args.strict, "Treat warnings as errors");

    CLI::App* validate = app.add_subcommand("validate", "Parse and resolve without output");
    validate->add_option("--spec", args.spec_path, "Spec JSON file")->required();
    validate->add_option("--data", args.data_path, "Data file overriding the spec's url");
    validate->add_flag("--strict", args.strict, "Treat warnings as errors");

    CLI11_PARSE(app, argc, argv);
    return run(args, render->parsed());
}
