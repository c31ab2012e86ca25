#pragma once

// Line-oriented reader shared by the plain-text instance formats.
// Blank lines and lines starting with '#' are skipped.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace loosehc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t field, const std::string& what)
        : std::runtime_error(format(line, field, what)), line_(line), field_(field) {}

    std::size_t line() const { return line_; }
    std::size_t field() const { return field_; }

private:
    static std::string format(std::size_t line, std::size_t field, const std::string& what) {
        std::string msg = "line " + std::to_string(line);
        if (field != 0) msg += ", field " + std::to_string(field);
        return msg + ": " + what;
    }

    std::size_t line_;
    std::size_t field_;
};

namespace detail {

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-blank, non-comment line split into integers. Empty at EOF.
    std::vector<std::int64_t> next_ints() {
        std::string text;
        while (std::getline(in_, text)) {
            ++line_;
            std::string_view view = text;
            while (!view.empty() && (view.back() == '\r' || view.back() == ' ' || view.back() == '\t'))
                view.remove_suffix(1);
            auto first = view.find_first_not_of(" \t");
            if (first == std::string_view::npos || view[first] == '#') continue;
            return tokenize(view.substr(first));
        }
        at_eof_ = true;
        return {};
    }

    bool eof() const { return at_eof_; }
    std::size_t line() const { return line_; }

    [[noreturn]] void fail(std::size_t field, const std::string& what) const {
        throw ParseError(line_, field, what);
    }

    void expect_fields(const std::vector<std::int64_t>& row, std::size_t count) const {
        if (row.size() != count)
            fail(0, "expected " + std::to_string(count) + " fields, found " + std::to_string(row.size()));
    }

private:
    std::vector<std::int64_t> tokenize(std::string_view view) const {
        std::vector<std::int64_t> out;
        std::size_t pos = 0;
        while (pos < view.size()) {
            while (pos < view.size() && (view[pos] == ' ' || view[pos] == '\t')) ++pos;
            if (pos >= view.size()) break;
            std::size_t end = pos;
            while (end < view.size() && view[end] != ' ' && view[end] != '\t') ++end;
            std::int64_t value = 0;
            const char* b = view.data() + pos;
            const char* e = view.data() + end;
            auto [ptr, ec] = std::from_chars(b, e, value);
            if (ec != std::errc{} || ptr != e)
                fail(out.size() + 1, "not an integer: '" + std::string(b, e) + "'");
            out.push_back(value);
            pos = end;
        }
        return out;
    }

    std::istream& in_;
    std::size_t line_ = 0;
    bool at_eof_ = false;
};

}  // namespace detail

/// Writes `contents` to `path` via a sibling temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

}  // namespace loosehc
