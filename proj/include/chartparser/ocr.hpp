#ifndef CHARTPARSER_OCR_HPP
#define CHARTPARSER_OCR_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chartparser/error.hpp"
#include "chartparser/raster.hpp"

namespace chartparser {

/// Word-level OCR unit.
struct TextBox {
    std::string text;
    BBox bbox;
    double confidence = 1.0;

    friend bool operator==(const TextBox&, const TextBox&) = default;
};

struct OcrResult {
    std::string image_id;
    std::vector<TextBox> boxes;
};

/// Source of raw text boxes for one image. Implementations are immutable once
/// constructed and may be queried from several threads.
class OcrProvider {
public:
    virtual ~OcrProvider() = default;
    virtual std::vector<TextBox> fetch(const std::string& image_id, const Raster& img) const = 0;
};

/// Box list shape shared by fixture files and the HTTP endpoint:
/// `[{"text": "...", "bbox": [x, y, w, h], "confidence": 0.99}, ...]`.
inline std::vector<TextBox> parse_box_list(const nlohmann::json& list) {
    if (!list.is_array()) throw Error(ErrorCode::MalformedResponse, "box list is not an array");
    std::vector<TextBox> out;
    out.reserve(list.size());
    for (const auto& item : list) {
        if (!item.is_object()) throw Error(ErrorCode::MalformedResponse, "box entry is not an object");
        const auto text = item.find("text");
        const auto bbox = item.find("bbox");
        if (text == item.end() || !text->is_string() || text->get<std::string>().empty())
            throw Error(ErrorCode::MalformedResponse, "box entry needs a non-empty \"text\"");
        if (bbox == item.end() || !bbox->is_array() || bbox->size() != 4)
            throw Error(ErrorCode::MalformedResponse, "box entry needs \"bbox\": [x, y, w, h]");
        for (const auto& v : *bbox)
            if (!v.is_number_integer()) throw Error(ErrorCode::MalformedResponse, "bbox values must be integers");
        TextBox box;
        box.text = text->get<std::string>();
        box.bbox = {(*bbox)[0].get<int>(), (*bbox)[1].get<int>(), (*bbox)[2].get<int>(), (*bbox)[3].get<int>()};
        if (box.bbox.w < 1 || box.bbox.h < 1)
            throw Error(ErrorCode::MalformedResponse, "bbox of \"" + box.text + "\" has non-positive size");
        if (const auto conf = item.find("confidence"); conf != item.end() && !conf->is_null()) {
            if (!conf->is_number()) throw Error(ErrorCode::MalformedResponse, "confidence must be a number");
            box.confidence = conf->get<double>();
            if (box.confidence < 0.0 || box.confidence > 1.0)
                throw Error(ErrorCode::MalformedResponse, "confidence outside [0, 1]");
        }
        out.push_back(std::move(box));
    }
    return out;
}

inline nlohmann::ordered_json box_list_to_json(const std::vector<TextBox>& boxes) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& b : boxes) {
        nlohmann::ordered_json item;
        item["text"] = b.text;
        item["bbox"] = {b.bbox.x, b.bbox.y, b.bbox.w, b.bbox.h};
        item["confidence"] = b.confidence;
        list.push_back(std::move(item));
    }
    return list;
}

/// Answers from a preloaded `{"images": {"<id>": [boxes...]}}` document.
class FixtureProvider final : public OcrProvider {
public:
    explicit FixtureProvider(std::map<std::string, std::vector<TextBox>> images)
        : images_(std::move(images)) {}

    std::vector<TextBox> fetch(const std::string& image_id, const Raster&) const override {
        const auto it = images_.find(image_id);
        if (it == images_.end())
            throw Error(ErrorCode::ProviderUnavailable, "fixture has no entry for image \"" + image_id + "\"");
        return it->second;
    }

    const std::map<std::string, std::vector<TextBox>>& images() const { return images_; }

private:
    std::map<std::string, std::vector<TextBox>> images_;
};

inline FixtureProvider parse_fixture(const nlohmann::json& doc) {
    if (!doc.is_object() || !doc.contains("images") || !doc["images"].is_object())
        throw Error(ErrorCode::MalformedResponse, "fixture needs an \"images\" object");
    std::map<std::string, std::vector<TextBox>> images;
    for (const auto& [id, list] : doc["images"].items()) images.emplace(id, parse_box_list(list));
    return FixtureProvider(std::move(images));
}

/// Reads a fixture file. A missing file is ProviderUnavailable; a file that
/// does not match the schema is MalformedResponse.
inline FixtureProvider load_fixture(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ProviderUnavailable, "cannot open fixture " + path.string());
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::MalformedResponse, std::string("fixture is not valid JSON: ") + e.what());
    }
    return parse_fixture(doc);
}

inline nlohmann::ordered_json fixture_to_json(const std::map<std::string, std::vector<TextBox>>& images) {
    nlohmann::ordered_json doc;
    doc["images"] = nlohmann::ordered_json::object();
    for (const auto& [id, boxes] : images) doc["images"][id] = box_list_to_json(boxes);
    return doc;
}

/// Clips a box to the image. Returns false when nothing remains.
inline bool clip_to_image(BBox& box, int width, int height) {
    const int x0 = std::max(box.x, 0), y0 = std::max(box.y, 0);
    const int x1 = std::min(box.right(), width), y1 = std::min(box.bottom(), height);
    if (x1 <= x0 || y1 <= y0) return false;
    box = {x0, y0, x1 - x0, y1 - y0};
    return true;
}

/// Runs a provider and normalizes its answer: boxes are clipped to the image
/// (boxes wholly outside are dropped) and exact duplicates removed.
inline OcrResult recognize(const OcrProvider& provider, const std::string& image_id, const Raster& img) {
    OcrResult result{image_id, {}};
    for (auto& box : provider.fetch(image_id, img)) {
        if (!clip_to_image(box.bbox, img.width(), img.height())) continue;
        const bool dup = std::any_of(result.boxes.begin(), result.boxes.end(), [&](const TextBox& b) {
            return b.text == box.text && b.bbox == box.bbox;
        });
        if (!dup) result.boxes.push_back(std::move(box));
    }
    return result;
}

}  // namespace chartparser

#endif
