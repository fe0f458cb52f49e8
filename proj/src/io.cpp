#include "pptrans/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pptrans {

namespace {

std::optional<DistributionKind> kind_from_string(const std::string& s) {
    if (s == "probability") return DistributionKind::probability;
    if (s == "possibility") return DistributionKind::possibility;
    return std::nullopt;
}

std::vector<double> numbers_from_json_array(const nlohmann::json& arr) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& item : arr) {
        if (!item.is_number()) throw parse_error("distribution arrays may contain only numbers");
        out.push_back(item.get<double>());
    }
    return out;
}

DistributionDocument parse_json_document(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("malformed document: ") + e.what());
    }
    DistributionDocument result;
    if (doc.is_array()) {
        result.values = numbers_from_json_array(doc);
    } else if (doc.is_object()) {
        if (!doc.contains("values") || !doc["values"].is_array())
            throw parse_error("object documents need a \"values\" array");
        result.values = numbers_from_json_array(doc["values"]);
        if (doc.contains("kind")) {
            if (!doc["kind"].is_string()) throw parse_error("\"kind\" must be a string");
            result.declared_kind = kind_from_string(doc["kind"].get<std::string>());
            if (!result.declared_kind)
                throw parse_error("\"kind\" must be \"probability\" or \"possibility\"");
        }
    } else {
        throw parse_error("document must be an array, an object, or one number per line");
    }
    return result;
}

DistributionDocument parse_line_document(const std::string& text) {
    DistributionDocument result;
    std::istringstream stream(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(stream, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        const std::string token = line.substr(first, last - first + 1);
        if (token[0] == '#') continue;
        const char* begin = token.c_str();
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end != begin + token.size() || !std::isfinite(value))
            throw parse_error("line " + std::to_string(lineno) + " is not a finite number: '" + token + "'");
        result.values.push_back(value);
    }
    return result;
}

}  // namespace

DistributionDocument parse_distribution_document(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw parse_error("empty document");
    DistributionDocument doc = (text[first] == '[' || text[first] == '{')
                                   ? parse_json_document(text)
                                   : parse_line_document(text);
    if (doc.values.empty()) throw parse_error("document holds no values");
    for (double v : doc.values)
        if (!std::isfinite(v)) throw parse_error("distribution values must be finite");
    return doc;
}

DistributionDocument load_distribution_document(const std::string& path) {
    return parse_distribution_document(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write file: " + path);
    out << content;
    if (!out) throw parse_error("failed writing file: " + path);
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

DistributionKind detect_kind(const std::vector<double>& values, bool renormalize) {
    double sum = 0.0;
    double max = 0.0;
    for (double v : values) {
        sum += v;
        max = std::max(max, v);
    }
    const double sum_window = renormalize ? kRenormalizeWindow : kProbabilitySumTolerance;
    if (std::abs(sum - 1.0) <= sum_window) return DistributionKind::probability;
    if (std::abs(max - 1.0) <= kNormalizedMaxTolerance && sum > 1.0) return DistributionKind::possibility;
    throw std::invalid_argument(
        "cannot determine the distribution kind (sum is not near 1 and the maximum is not 1); "
        "declare it with a \"kind\" field or an explicit flag");
}

const char* kind_name(DistributionKind kind) {
    return kind == DistributionKind::probability ? "probability" : "possibility";
}

}  // namespace pptrans
