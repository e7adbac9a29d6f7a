#include "mfscale/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "mfscale/error.hpp"

namespace mfscale {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

bool looks_like_date(std::string_view s) { return s.size() == 10 && s[4] == '-' && s[7] == '-'; }

std::optional<std::int64_t> parse_date(std::string_view s) {
    if (!looks_like_date(s)) return std::nullopt;
    const auto y = parse_int(s.substr(0, 4));
    const auto m = parse_int(s.substr(5, 2));
    const auto d = parse_int(s.substr(8, 2));
    if (!y || !m || !d) return std::nullopt;
    using namespace std::chrono;
    const year_month_day ymd{year{static_cast<int>(*y)}, month{static_cast<unsigned>(*m)},
                             day{static_cast<unsigned>(*d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd}.time_since_epoch().count();
}

template <class T>
std::string to_chars_string(T value, auto... args) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, args...);
    return std::string(buf.data(), ptr);
}

}  // namespace

Series parse_csv(std::string_view text, std::string label) {
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
    enum class Style { unknown, date, index } style = Style::unknown;
    bool first_row = true;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(pos, end - pos));
        pos = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": expected `date,value`", line_no);
        }
        const auto key = trim(line.substr(0, comma));
        const auto val = trim(line.substr(comma + 1));
        if (val.find(',') != std::string_view::npos) {
            throw ParseError("line " + std::to_string(line_no) + ": too many columns", line_no);
        }
        const auto value = parse_double(val);
        if (first_row) {
            first_row = false;
            if (!value) continue;  // header
        }
        if (!value) {
            throw ParseError("line " + std::to_string(line_no) + ": cannot parse value `" + std::string(val) + "`",
                             line_no);
        }
        if (!std::isfinite(*value)) {
            throw ParseError("line " + std::to_string(line_no) + ": non-finite value", line_no);
        }
        if (style == Style::unknown) style = looks_like_date(key) ? Style::date : Style::index;
        const auto ts = style == Style::date ? parse_date(key) : parse_int(key);
        if (!ts) {
            throw ParseError("line " + std::to_string(line_no) + ": cannot parse " +
                                 (style == Style::date ? "date" : "index") + " `" + std::string(key) + "`",
                             line_no);
        }
        if (!timestamps.empty() && *ts <= timestamps.back()) {
            throw ParseError("line " + std::to_string(line_no) + ": timestamps not strictly increasing", line_no);
        }
        timestamps.push_back(*ts);
        values.push_back(*value);
    }
    if (values.size() < 2) {
        throw InsufficientDataError("CSV holds " + std::to_string(values.size()) + " data rows, need at least 2");
    }
    return Series(std::move(timestamps), std::move(values), std::move(label));
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open " + path.string(), 0);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw DomainError("cannot write " + path.string());
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw DomainError("write failed for " + path.string());
    }
}

Series ingest_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.stem().string()); }

std::string format_csv(const Series& series) {
    std::string out = "index,value\n";
    const auto ts = series.timestamps();
    const auto v = series.values();
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += std::to_string(ts[i]);
        out += ',';
        out += format_shortest(v[i]);
        out += '\n';
    }
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw NumericalError("SHA-256 computation failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

std::string format_sig9(double value) { return to_chars_string(value, std::chars_format::general, 9); }

std::string format_shortest(double value) { return to_chars_string(value); }

std::string format_tsv(std::span<const TsvColumn> columns) {
    std::string out = "#";
    std::size_t rows = 0;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += c == 0 ? " " : "\t";
        out += columns[c].name;
        rows = std::max(rows, columns[c].values.size());
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += '\t';
            if (r < columns[c].values.size()) out += format_sig9(columns[c].values[r]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace mfscale
