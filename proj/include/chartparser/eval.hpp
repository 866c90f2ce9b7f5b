#ifndef CHARTPARSER_EVAL_HPP
#define CHARTPARSER_EVAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartparser/error.hpp"
#include "chartparser/pipeline.hpp"
#include "chartparser/raster.hpp"
#include "chartparser/synthgen.hpp"

namespace chartparser::eval {

inline double iou(const BBox& a, const BBox& b) {
    const long inter = intersection_area(a, b);
    if (inter == 0) return 0.0;
    return double(inter) / double(a.area() + b.area() - inter);
}

struct MatchScore {
    int matches = 0;
    int predicted = 0;
    int truth = 0;
    double precision() const { return predicted ? double(matches) / predicted : 0.0; }
    double recall() const { return truth ? double(matches) / truth : 0.0; }
    double f1() const {
        const double p = precision(), r = recall();
        return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    }
};

/// Matched (pred index, truth index) pairs with IoU above the threshold.
inline std::vector<std::pair<std::size_t, std::size_t>> greedy_match(const std::vector<BBox>& pred,
                                                                     const std::vector<BBox>& truth,
                                                                     double threshold) {
    struct Candidate {
        double iou;
        std::size_t p, t;
    };
    std::vector<Candidate> cands;
    for (std::size_t p = 0; p < pred.size(); ++p)
        for (std::size_t t = 0; t < truth.size(); ++t) {
            const double v = iou(pred[p], truth[t]);
            if (v > threshold) cands.push_back({v, p, t});
        }
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.iou != b.iou) return a.iou > b.iou;
        if (a.p != b.p) return a.p < b.p;
        return a.t < b.t;
    });
    std::vector<bool> used_p(pred.size()), used_t(truth.size());
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& c : cands) {
        if (used_p[c.p] || used_t[c.t]) continue;
        used_p[c.p] = used_t[c.t] = true;
        out.emplace_back(c.p, c.t);
    }
    return out;
}

inline MatchScore match_f1(const std::vector<BBox>& pred, const std::vector<BBox>& truth, double threshold = 0.5) {
    if (!(threshold > 0.0 && threshold < 1.0)) throw std::invalid_argument("IoU threshold must lie in (0, 1)");
    return {int(greedy_match(pred, truth, threshold).size()), int(pred.size()), int(truth.size())};
}

struct Thresholds {
    int axis_px = 2;
    int color_delta = 5;
    double value_relative = 0.02;
    double value_alpha_multiple = 2.0;
    double iou = 0.5;
};

enum Component {
    XAxis,
    YAxis,
    XLabel,
    YLabel,
    XTicks,
    YTicks,
    LegendNames,
    LegendColor,
    DataAssociation,
    kComponentCount
};

inline constexpr std::array<std::string_view, kComponentCount> kComponentKeys = {
    "x_axis", "y_axis", "x_label", "y_label", "x_ticks", "y_ticks", "legend", "legend_color", "data_association"};
inline constexpr std::array<std::string_view, kComponentCount> kComponentTitles = {
    "X-axis", "Y-axis", "X-axis label", "Y-axis label", "X-axis ticks", "Y-axis ticks",
    "Legend", "Legend color", "Data association"};

struct ChartScore {
    std::string image_id;
    std::array<bool, kComponentCount> pass{};
    MatchScore text;
};

struct EvalReport {
    std::array<double, kComponentCount> accuracy{};
    MatchScore text;
    int corpus_size = 0;
    double iou_threshold = 0.5;
    std::vector<ChartScore> charts;
};

namespace detail {

inline std::string normalize_ws(std::string_view s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            pending = !out.empty();
        } else {
            if (pending) out += ' ';
            pending = false;
            out += c;
        }
    }
    return out;
}

inline bool label_correct(const std::optional<AxisLabel>& pred, const std::optional<AxisLabel>& truth) {
    if (!pred || !truth) return !pred && !truth;
    return normalize_ws(pred->text) == normalize_ws(truth->text);
}

inline bool same_value(const std::optional<double>& a, const std::optional<double>& b) {
    if (!a || !b) return !a && !b;
    return std::abs(*a - *b) <= 1e-9 * std::max(1.0, std::abs(*b));
}

inline bool ticks_correct(const std::optional<TickSet>& pred, const TickSet& truth, double threshold) {
    std::vector<BBox> pb, tb;
    if (pred)
        for (const auto& t : pred->ticks) pb.push_back(t.box.bbox);
    for (const auto& t : truth.ticks) tb.push_back(t.box.bbox);
    if (pb.empty() && tb.empty()) return true;
    const auto pairs = greedy_match(pb, tb, threshold);
    if (pairs.size() != pb.size() || pairs.size() != tb.size()) return false;
    for (const auto& [p, t] : pairs)
        if (!same_value(pred->ticks[p].value, truth.ticks[t].value)) return false;
    return true;
}

inline bool legend_names_correct(const Extraction& ex, const synth::GroundTruth& gt) {
    std::multiset<std::string> a, b;
    for (const auto& e : ex.legend.entries) a.insert(normalize_ws(e.name));
    for (const auto& e : gt.legend) b.insert(normalize_ws(e.name));
    return a == b;
}

inline bool legend_color_correct(const Extraction& ex, const synth::GroundTruth& gt, int delta) {
    if (gt.legend.empty()) return ex.legend.entries.empty();
    for (const auto& t : gt.legend) {
        const auto it = std::find_if(ex.legend.entries.begin(), ex.legend.entries.end(),
                                     [&](const LegendEntry& e) { return normalize_ws(e.name) == normalize_ws(t.name); });
        if (it == ex.legend.entries.end()) return false;
        if (std::abs(int(it->color.r) - int(t.color.r)) > delta || std::abs(int(it->color.g) - int(t.color.g)) > delta ||
            std::abs(int(it->color.b) - int(t.color.b)) > delta)
            return false;
    }
    return true;
}

/// Every true cell must be matched by (series, category) name; an absent
/// predicted cell counts as 0.
inline bool data_correct(const Extraction& ex, const synth::GroundTruth& gt, const Thresholds& th) {
    if (!ex.table) return false;
    const ChartTable& t = *ex.table;
    const double abs_tol = th.value_alpha_multiple * gt.alpha;
    for (const auto& bar : gt.bars) {
        const auto cat = std::find(t.categories.begin(), t.categories.end(), bar.category);
        const auto ser = std::find_if(t.series.begin(), t.series.end(),
                                      [&](const SeriesColumn& s) { return normalize_ws(s.name) == normalize_ws(bar.series); });
        if (cat == t.categories.end() || ser == t.series.end()) return false;
        const auto idx = std::size_t(cat - t.categories.begin());
        const double got = idx < ser->values.size() && ser->values[idx] ? *ser->values[idx] : 0.0;
        if (std::abs(got - bar.value) > std::max(th.value_relative * std::abs(bar.value), abs_tol)) return false;
    }
    return true;
}

}  // namespace detail

inline ChartScore score_chart(const Extraction& ex, const synth::GroundTruth& gt, const Thresholds& th = {}) {
    ChartScore s;
    s.image_id = gt.image_id;
    if (ex.axes) {
        s.pass[XAxis] = std::abs(ex.axes->x_axis_row - gt.axes.x_axis_row) <= th.axis_px;
        s.pass[YAxis] = std::abs(ex.axes->y_axis_col - gt.axes.y_axis_col) <= th.axis_px;
    }
    s.pass[XLabel] = ex.axes.has_value() && detail::label_correct(ex.x_label, gt.x_label);
    s.pass[YLabel] = ex.axes.has_value() && detail::label_correct(ex.y_label, gt.y_label);
    s.pass[XTicks] = detail::ticks_correct(ex.x_ticks, gt.x_ticks, th.iou);
    s.pass[YTicks] = detail::ticks_correct(ex.y_ticks, gt.y_ticks, th.iou);
    s.pass[LegendNames] = detail::legend_names_correct(ex, gt);
    s.pass[LegendColor] = detail::legend_color_correct(ex, gt, th.color_delta);
    s.pass[DataAssociation] = detail::data_correct(ex, gt, th);

    std::vector<BBox> pb, tb;
    for (const auto& b : ex.ocr_boxes) pb.push_back(b.bbox);
    for (const auto& b : gt.text_boxes) tb.push_back(b.bbox);
    s.text = match_f1(pb, tb, th.iou);
    return s;
}

/// Scores `pred` against `truth`; both lists must carry the same image ids
/// (order may differ).
inline EvalReport component_accuracy(const std::vector<Extraction>& pred, const std::vector<synth::GroundTruth>& truth,
                                     const Thresholds& th = {}) {
    std::map<std::string, const Extraction*> by_id;
    for (const auto& e : pred)
        if (!by_id.emplace(e.image_id, &e).second)
            throw Error(ErrorCode::CorpusMismatch, "duplicate prediction for " + e.image_id);
    if (pred.size() != truth.size())
        throw Error(ErrorCode::CorpusMismatch, std::to_string(pred.size()) + " predictions for " +
                                                   std::to_string(truth.size()) + " ground-truth charts");
    EvalReport r;
    r.iou_threshold = th.iou;
    r.corpus_size = int(truth.size());
    std::array<int, kComponentCount> passed{};
    for (const auto& gt : truth) {
        const auto it = by_id.find(gt.image_id);
        if (it == by_id.end()) throw Error(ErrorCode::CorpusMismatch, "no prediction for " + gt.image_id);
        ChartScore s = score_chart(*it->second, gt, th);
        for (int c = 0; c < kComponentCount; ++c) passed[std::size_t(c)] += s.pass[std::size_t(c)];
        r.text.matches += s.text.matches;
        r.text.predicted += s.text.predicted;
        r.text.truth += s.text.truth;
        r.charts.push_back(std::move(s));
    }
    std::sort(r.charts.begin(), r.charts.end(),
              [](const ChartScore& a, const ChartScore& b) { return a.image_id < b.image_id; });
    for (int c = 0; c < kComponentCount; ++c)
        r.accuracy[std::size_t(c)] = r.corpus_size ? double(passed[std::size_t(c)]) / r.corpus_size : 0.0;
    return r;
}

inline nlohmann::ordered_json report_to_json(const EvalReport& r) {
    nlohmann::ordered_json j;
    j["corpus_size"] = r.corpus_size;
    nlohmann::ordered_json acc;
    for (int c = 0; c < kComponentCount; ++c) acc[std::string(kComponentKeys[std::size_t(c)])] = r.accuracy[std::size_t(c)];
    j["accuracy"] = std::move(acc);
    j["text_detection"] = {{"iou_threshold", r.iou_threshold},
                           {"matches", r.text.matches},
                           {"predicted", r.text.predicted},
                           {"truth", r.text.truth},
                           {"precision", r.text.precision()},
                           {"recall", r.text.recall()},
                           {"f1", r.text.f1()}};
    auto failures = nlohmann::ordered_json::array();
    for (const auto& s : r.charts) {
        auto failed = nlohmann::ordered_json::array();
        for (int c = 0; c < kComponentCount; ++c)
            if (!s.pass[std::size_t(c)]) failed.push_back(kComponentKeys[std::size_t(c)]);
        if (!failed.empty()) failures.push_back({{"image_id", s.image_id}, {"failed", std::move(failed)}});
    }
    j["failures"] = std::move(failures);
    return j;
}

/// Two-column text table, one row per component, then text detection.
inline std::string report_to_text(const EvalReport& r) {
    std::string s;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%-20s %s\n", "Component", "Accuracy (%)");
    s += buf;
    for (int c = 0; c < kComponentCount; ++c) {
        std::snprintf(buf, sizeof buf, "%-20s %.1f\n", std::string(kComponentTitles[std::size_t(c)]).c_str(),
                      100.0 * r.accuracy[std::size_t(c)]);
        s += buf;
    }
    std::snprintf(buf, sizeof buf, "\nText detection (IoU > %.2f): P=%.3f R=%.3f F1=%.3f over %d charts\n",
                  r.iou_threshold, r.text.precision(), r.text.recall(), r.text.f1(), r.corpus_size);
    s += buf;
    return s;
}

}  // namespace chartparser::eval

#endif
