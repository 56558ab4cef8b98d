#pragma once

#include <cmath>
#include <type_traits>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace lpc {

// Minimal insertion-ordered JSON value for report emission. Numbers print
// with 17 significant digits so identical configs reproduce byte-identical
// files; object keys keep insertion order.
class JsonValue {
public:
    using Array = std::vector<JsonValue>;
    using Object = std::vector<std::pair<std::string, JsonValue>>;

    JsonValue() : data_(nullptr) {}
    JsonValue(std::nullptr_t) : data_(nullptr) {}
    JsonValue(bool b) : data_(b) {}
    JsonValue(double d) : data_(d) {}
    template <class I, std::enable_if_t<std::is_integral_v<I> && !std::is_same_v<I, bool>, int> = 0>
    JsonValue(I i) : data_(static_cast<std::int64_t>(i)) {}
    JsonValue(const char* s) : data_(std::string(s)) {}
    JsonValue(std::string s) : data_(std::move(s)) {}
    JsonValue(Array a) : data_(std::move(a)) {}

    static JsonValue object() {
        JsonValue v;
        v.data_ = Object{};
        return v;
    }
    static JsonValue array() {
        JsonValue v;
        v.data_ = Array{};
        return v;
    }

    JsonValue& set(const std::string& key, JsonValue value) {
        std::get<Object>(data_).emplace_back(key, std::move(value));
        return *this;
    }
    JsonValue& push(JsonValue value) {
        std::get<Array>(data_).push_back(std::move(value));
        return *this;
    }

    std::string dump(int indent = 2) const {
        std::string out;
        write(out, indent, 0);
        out.push_back('\n');
        return out;
    }

private:
    static void escape(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
        const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
        if (std::holds_alternative<std::nullptr_t>(data_)) {
            out += "null";
        } else if (const auto* b = std::get_if<bool>(&data_)) {
            out += *b ? "true" : "false";
        } else if (const auto* i = std::get_if<std::int64_t>(&data_)) {
            out += std::to_string(*i);
        } else if (const auto* d = std::get_if<double>(&data_)) {
            if (!std::isfinite(*d)) {
                out += *d > 0 ? "\"inf\"" : (*d < 0 ? "\"-inf\"" : "\"nan\"");
            } else {
                char buf[40];
                std::snprintf(buf, sizeof(buf), "%.17g", *d);
                out += buf;
            }
        } else if (const auto* s = std::get_if<std::string>(&data_)) {
            escape(out, *s);
        } else if (const auto* a = std::get_if<Array>(&data_)) {
            if (a->empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < a->size(); ++k) {
                out += pad;
                (*a)[k].write(out, indent, depth + 1);
                if (k + 1 < a->size()) out.push_back(',');
                out.push_back('\n');
            }
            out += close_pad + "]";
        } else {
            const auto& o = std::get<Object>(data_);
            if (o.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t k = 0; k < o.size(); ++k) {
                out += pad;
                escape(out, o[k].first);
                out += ": ";
                o[k].second.write(out, indent, depth + 1);
                if (k + 1 < o.size()) out.push_back(',');
                out.push_back('\n');
            }
            out += close_pad + "}";
        }
    }

    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string, Array, Object> data_;
};

} // namespace lpc
