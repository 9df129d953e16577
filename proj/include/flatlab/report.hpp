#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace flatlab {

// ---------------------------------------------------------------------------
// Minimal JSON document with insertion-ordered object keys and doubles printed
// at 17 significant digits, so equal inputs produce byte-identical reports.
// Non-finite doubles serialize as the strings "inf" / "-inf" / "nan".
// ---------------------------------------------------------------------------

class Json {
  public:
    Json() : kind_(Kind::Null) {}
    Json(bool b) : kind_(Kind::Bool), bool_(b) {}
    Json(int v) : kind_(Kind::Int), int_(v) {}
    Json(long v) : kind_(Kind::Int), int_(v) {}
    Json(long long v) : kind_(Kind::Int), int_(v) {}
    Json(unsigned v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
    Json(unsigned long v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
    Json(unsigned long long v) : kind_(Kind::Int), int_(static_cast<long long>(v)) {}
    Json(double v) : kind_(Kind::Double), double_(v) {}
    Json(const char* s) : kind_(Kind::String), string_(s) {}
    Json(std::string s) : kind_(Kind::String), string_(std::move(s)) {}
    Json(std::string_view s) : kind_(Kind::String), string_(s) {}

    static Json object() {
        Json j;
        j.kind_ = Kind::Object;
        return j;
    }
    static Json array() {
        Json j;
        j.kind_ = Kind::Array;
        return j;
    }

    Json& set(std::string key, Json value) {
        if (kind_ != Kind::Object) throw std::logic_error("Json::set on non-object");
        members_.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    Json& push(Json value) {
        if (kind_ != Kind::Array) throw std::logic_error("Json::push on non-array");
        items_.push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

  private:
    enum class Kind { Null, Bool, Int, Double, String, Object, Array };

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\r': out += "\\r"; break;
                case '\t': out += "\\t"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    static void write_double(std::string& out, double v) {
        if (std::isnan(v)) {
            out += "\"nan\"";
            return;
        }
        if (std::isinf(v)) {
            out += v > 0 ? "\"inf\"" : "\"-inf\"";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        // keep a numeric token recognizable as floating point
        if (out.find_first_of(".eEn", out.size() - std::strlen(buf)) == std::string::npos)
            out += ".0";
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
        const std::string closing_pad(static_cast<std::size_t>(indent * depth), ' ');
        switch (kind_) {
            case Kind::Null: out += "null"; break;
            case Kind::Bool: out += bool_ ? "true" : "false"; break;
            case Kind::Int: out += std::to_string(int_); break;
            case Kind::Double: write_double(out, double_); break;
            case Kind::String: write_escaped(out, string_); break;
            case Kind::Object: {
                if (members_.empty()) {
                    out += "{}";
                    break;
                }
                out += "{\n";
                for (std::size_t i = 0; i < members_.size(); ++i) {
                    out += pad;
                    write_escaped(out, members_[i].first);
                    out += ": ";
                    members_[i].second.write(out, indent, depth + 1);
                    if (i + 1 < members_.size()) out += ",";
                    out += "\n";
                }
                out += closing_pad + "}";
                break;
            }
            case Kind::Array: {
                if (items_.empty()) {
                    out += "[]";
                    break;
                }
                out += "[\n";
                for (std::size_t i = 0; i < items_.size(); ++i) {
                    out += pad;
                    items_[i].write(out, indent, depth + 1);
                    if (i + 1 < items_.size()) out += ",";
                    out += "\n";
                }
                out += closing_pad + "]";
                break;
            }
        }
    }

    Kind kind_;
    bool bool_ = false;
    long long int_ = 0;
    double double_ = 0.0;
    std::string string_;
    std::vector<std::pair<std::string, Json>> members_;
    std::vector<Json> items_;
};

inline std::string format_double17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// CSV with a header row; doubles use the same 17-digit policy.
// ---------------------------------------------------------------------------

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
        append_row(header);
    }

    void append_row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) throw std::invalid_argument("CsvWriter: column count mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ += ',';
            body_ += cells[i];
        }
        body_ += '\n';
    }

    const std::string& str() const { return body_; }

  private:
    std::size_t columns_;
    std::string body_;
};

// ---------------------------------------------------------------------------
// FNV-1a 64-bit digests for manifest input/output fingerprints.
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string digest_hex(std::string_view data) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(data)));
    return buf;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_text_file: cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_text_file: cannot open " + path);
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write_text_file: short write to " + path);
}

/// What a run needs to be reproduced: the invocation, the seeds, and the
/// digests of everything read and written. Equal inputs here imply
/// byte-identical report files (wall time lives only in the manifest).
struct RunManifest {
    std::string command_line;
    std::vector<std::uint64_t> seeds;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    double wall_ms = 0.0;
};

inline Json manifest_json(const RunManifest& m, std::string_view tool, std::string_view version) {
    Json j = Json::object();
    j.set("schema", 1);
    j.set("tool", std::string(tool));
    j.set("version", std::string(version));
    j.set("command", m.command_line);
    Json seeds = Json::array();
    for (std::uint64_t s : m.seeds) seeds.push(static_cast<unsigned long long>(s));
    j.set("seeds", std::move(seeds));
    Json inputs = Json::array();
    for (const auto& [path, digest] : m.inputs)
        inputs.push(Json::object().set("path", path).set("digest", digest));
    j.set("inputs", std::move(inputs));
    Json outputs = Json::array();
    for (const auto& [path, digest] : m.outputs)
        outputs.push(Json::object().set("path", path).set("digest", digest));
    j.set("outputs", std::move(outputs));
    j.set("wall_ms", m.wall_ms);
    return j;
}

}  // namespace flatlab
