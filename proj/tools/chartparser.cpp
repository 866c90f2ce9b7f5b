// chartparser: parse bar-chart images into data tables, generate synthetic
// corpora, and score extractions against ground truth.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "chartparser/eval.hpp"
#include "chartparser/image_io.hpp"
#include "chartparser/ocr.hpp"
#include "chartparser/ocr_http.hpp"
#include "chartparser/output.hpp"
#include "chartparser/pipeline.hpp"
#include "chartparser/synthgen.hpp"

namespace fs = std::filesystem;
using namespace chartparser;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 1;
constexpr int kExitPartial = 2;

struct ParseOptions {
    std::vector<std::string> inputs;
    std::string ocr;
    std::string format = "json";
    std::string out_dir;
    bool extraction = false;
    PipelineConfig pipeline;
};

struct GenOptions {
    int count = 100;
    std::uint64_t seed = 42;
    std::string out_dir;
    int perturb = 0;
};

struct EvalOptions {
    std::string truth_dir;
    std::string pred_dir;
    std::string out;
    bool text = false;
    eval::Thresholds thresholds;
};

std::unique_ptr<OcrProvider> make_provider(std::string mode) {
    if (mode.empty()) {
        const char* env = std::getenv("CHARTPARSER_OCR_URL");
        if (!env || !*env)
            throw Error(ErrorCode::ProviderUnavailable, "no OCR source: pass --ocr or set CHARTPARSER_OCR_URL");
        mode = std::string("http:") + env;
    }
    if (mode.rfind("fixture:", 0) == 0) return std::make_unique<FixtureProvider>(load_fixture(mode.substr(8)));
    if (mode.rfind("http:", 0) == 0 && mode.rfind("http://", 0) != 0)
        return std::make_unique<HttpProvider>(mode.substr(5));
    if (mode.rfind("http://", 0) == 0) return std::make_unique<HttpProvider>(mode);
    throw Error(ErrorCode::ProviderUnavailable, "--ocr must be fixture:<path> or http:<url>, got " + mode);
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    out << bytes;
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

int run_parse(const ParseOptions& opt) {
    const auto format = parse_format(opt.format);
    if (!format) {
        std::cerr << "error: unknown format " << opt.format << "\n";
        return kExitFatal;
    }
    std::unique_ptr<OcrProvider> provider;
    try {
        provider = make_provider(opt.ocr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);

    int failed = 0;
    for (const auto& input : opt.inputs) {
        const fs::path path(input);
        const std::string id = path.stem().string();
        const fs::path dir = opt.out_dir.empty() ? path.parent_path() : fs::path(opt.out_dir);
        Extraction ex;
        ex.image_id = id;
        try {
            const Raster img = read_image(path);
            const OcrResult ocr = recognize(*provider, id, img);
            ex = parse_chart(img, ocr.boxes, id, opt.pipeline);
        } catch (const Error& e) {
            ex.error = Warning{e.code(), e.detail()};
        }
        for (const auto& w : ex.warnings) std::cerr << "WARN " << id << ' ' << code_name(w.code) << ' ' << w.detail << "\n";
        if (ex.ok()) {
            const auto rendered = render_table(*ex.table, *format, id);
            write_file(dir / (id + "." + std::string(format_extension(*format))), rendered.bytes);
        } else {
            ++failed;
            std::cerr << "ERROR " << id << ' ' << code_name(ex.error->code) << ' ' << ex.error->detail << "\n";
        }
        if (opt.extraction) write_file(dir / (id + ".extraction.json"), extraction_to_json(ex).dump(2) + "\n");
    }
    return failed == 0 ? kExitOk : kExitPartial;
}

int run_gen(const GenOptions& opt) {
    try {
        synth::write_corpus(opt.out_dir, opt.count, opt.seed, opt.perturb);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitOk;
}

std::vector<fs::path> files_with_suffix(const fs::path& dir, const std::string& suffix) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.size() > suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
            out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

nlohmann::json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return nlohmann::json::parse(in);
}

int run_eval(const EvalOptions& opt) {
    try {
        if (!fs::is_directory(opt.truth_dir) || !fs::is_directory(opt.pred_dir)) {
            std::cerr << "error: --truth and --pred must be directories\n";
            return kExitFatal;
        }
        std::vector<synth::GroundTruth> truth;
        for (const auto& p : files_with_suffix(opt.truth_dir, ".truth.json"))
            truth.push_back(synth::truth_from_json(read_json(p)));
        if (truth.empty()) {
            std::cerr << "error: no *.truth.json files in " << opt.truth_dir << "\n";
            return kExitFatal;
        }
        std::vector<Extraction> pred;
        for (const auto& p : files_with_suffix(opt.pred_dir, ".extraction.json"))
            pred.push_back(extraction_from_json(read_json(p)));
        const auto report = eval::component_accuracy(pred, truth, opt.thresholds);
        const std::string json = eval::report_to_json(report).dump(2) + "\n";
        if (opt.out.empty())
            std::cout << json;
        else
            write_file(opt.out, json);
        if (opt.text) std::cout << eval::report_to_text(report);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bar chart to data table extraction"};
    app.require_subcommand(1, 1);
    {
        const PipelineConfig d;
        std::ostringstream defaults;
        defaults << "Defaults: binarize " << d.binarize_threshold << ", axis band " << d.axis_band << ", merge gap "
                 << d.merge_gap << ", color tolerance " << d.color_tolerance << ", iou " << eval::Thresholds{}.iou;
        app.footer(defaults.str());
    }

    ParseOptions parse;
    auto* p = app.add_subcommand("parse", "Extract data tables from chart images");
    p->add_option("inputs", parse.inputs, "Chart images (PNG or JPEG)")->required()->check(CLI::ExistingFile);
    p->add_option("--ocr", parse.ocr,
                  "OCR source: fixture:<path> or http:<url> (default: http from CHARTPARSER_OCR_URL)");
    p->add_option("--format", parse.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "html"}))
        ->capture_default_str();
    p->add_option("--out", parse.out_dir, "Output directory (default: next to each input)");
    p->add_flag("--extraction", parse.extraction, "Also write <stem>.extraction.json with every intermediate result");
    p->add_option("--binarize", parse.pipeline.binarize_threshold, "Luminance threshold for ink")
        ->check(CLI::Range(1, 255))
        ->capture_default_str();
    p->add_option("--axis-band", parse.pipeline.axis_band, "Axis run-length band (px)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    p->add_option("--merge-gap", parse.pipeline.merge_gap, "Max gap between merged legend words (px)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    p->add_option("--color-tol", parse.pipeline.color_tolerance, "Region-growing color tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    GenOptions gen;
    auto* g = app.add_subcommand("gen", "Render a synthetic chart corpus with ground truth");
    g->add_option("--count", gen.count, "Number of charts")->check(CLI::PositiveNumber)->capture_default_str();
    g->add_option("--seed", gen.seed, "Corpus seed")->capture_default_str();
    g->add_option("--out", gen.out_dir, "Output directory")->required();
    g->add_option("--perturb", gen.perturb, "Per-channel jitter bound k")
        ->check(CLI::Range(0, 10))
        ->capture_default_str();

    EvalOptions ev;
    auto* e = app.add_subcommand("eval", "Score extraction records against ground truth");
    e->add_option("--truth", ev.truth_dir, "Directory of *.truth.json files")->required();
    e->add_option("--pred", ev.pred_dir, "Directory of *.extraction.json files")->required();
    e->add_option("--out", ev.out, "Report path (default: stdout)");
    e->add_flag("--text", ev.text, "Also print a plain-text accuracy table");
    e->add_option("--iou", ev.thresholds.iou, "IoU threshold for box matching")
        ->check(CLI::Range(0.0, 1.0).description("in (0, 1)"))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& err) {
        return app.exit(err);
    } catch (const CLI::CallForAllHelp& err) {
        return app.exit(err);
    } catch (const CLI::ParseError& err) {
        app.exit(err);
        return kExitFatal;
    }
    if (ev.thresholds.iou <= 0.0 || ev.thresholds.iou >= 1.0) {
        std::cerr << "error: --iou must lie in (0, 1)\n";
        return kExitFatal;
    }

    if (*p) return run_parse(parse);
    if (*g) return run_gen(gen);
    return run_eval(ev);
}
