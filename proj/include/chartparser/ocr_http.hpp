#ifndef CHARTPARSER_OCR_HTTP_HPP
#define CHARTPARSER_OCR_HTTP_HPP

#include <chrono>
#include <string>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "chartparser/error.hpp"
#include "chartparser/image_io.hpp"
#include "chartparser/ocr.hpp"

namespace chartparser {

struct HttpEndpoint {
    std::string origin;  // scheme://host[:port]
    std::string path;    // starts with '/'
};

inline HttpEndpoint split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos || url.substr(0, scheme_end) != "http")
        throw Error(ErrorCode::ProviderUnavailable, "OCR URL must be http://host[:port]/path, got " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

/**
 * POSTs the image as PNG to an OCR endpoint and reads back a JSON box list
 * (same shape as a fixture entry). A fresh client per request keeps
 * concurrent calls independent.
 */
class HttpProvider final : public OcrProvider {
public:
    explicit HttpProvider(std::string url, std::chrono::seconds timeout = std::chrono::seconds(30))
        : endpoint_(split_url(url)), url_(std::move(url)), timeout_(timeout) {}

    std::vector<TextBox> fetch(const std::string& image_id, const Raster& img) const override {
        const auto png = encode_png(img);
        httplib::Client client(endpoint_.origin);
        client.set_connection_timeout(timeout_);
        client.set_read_timeout(timeout_);
        client.set_write_timeout(timeout_);
        const auto res = client.Post(endpoint_.path, reinterpret_cast<const char*>(png.data()), png.size(),
                                     "image/png");
        if (!res)
            throw Error(ErrorCode::ProviderUnavailable,
                        url_ + " for " + image_id + ": " + httplib::to_string(res.error()));
        if (res->status != 200)
            throw Error(ErrorCode::ProviderUnavailable,
                        url_ + " for " + image_id + ": HTTP " + std::to_string(res->status));
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(res->body);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::MalformedResponse, std::string("OCR response is not JSON: ") + e.what());
        }
        return parse_box_list(doc);
    }

    const std::string& url() const { return url_; }

private:
    HttpEndpoint endpoint_;
    std::string url_;
    std::chrono::seconds timeout_;
};

}  // namespace chartparser

#endif
