#include "nnld/pointset.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace nnld {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::budget_exceeded: return "budget-exceeded";
    case ErrorKind::unsupported_arithmetic: return "unsupported-arithmetic";
    case ErrorKind::refused: return "refused";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

std::string to_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(const std::string& text) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos)
            return Rational(BigInt(text));
        const BigInt den(text.substr(slash + 1));
        if (den == 0)
            fail(ErrorKind::parse, "zero denominator in '" + text + "'");
        return Rational(BigInt(text.substr(0, slash)), den);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail(ErrorKind::parse, "not a rational: '" + text + "'");
    }
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

namespace {

std::int64_t parse_int(std::string_view s, const char* what) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        fail(ErrorKind::parse, std::string("bad integer for ") + what + ": '" + std::string(s) + "'");
    return v;
}

// Value of "key=value" token in the header, or throws.
std::string_view header_field(std::string_view header, std::string_view key) {
    const std::string needle = " " + std::string(key) + "=";
    const auto pos = header.find(needle);
    if (pos == std::string_view::npos)
        fail(ErrorKind::parse, "CSV header lacks '" + std::string(key) + "='");
    auto rest = header.substr(pos + needle.size());
    if (key == "provenance")
        return rest;
    return rest.substr(0, rest.find(' '));
}

} // namespace

void write_csv(std::ostream& os, const PointSet& p) {
    os << "# d=" << p.dim() << " n=" << p.size() << " den=" << p.denominator()
       << " provenance=" << p.provenance().description << '\n';
    for (std::int64_t i = 0; i < p.size(); ++i) {
        auto pt = p.point(i);
        for (std::size_t j = 0; j < pt.size(); ++j)
            os << (j ? "," : "") << pt[j];
        os << '\n';
    }
}

std::string to_csv(const PointSet& p) {
    std::ostringstream os;
    write_csv(os, p);
    return os.str();
}

PointSet read_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("# ", 0) != 0)
        fail(ErrorKind::parse, "missing '# d=... n=... den=... provenance=...' header");
    if (!header.empty() && header.back() == '\r')
        header.pop_back();
    const auto d = parse_int(header_field(header, "d"), "d");
    const auto n = parse_int(header_field(header, "n"), "n");
    const auto den = parse_int(header_field(header, "den"), "den");
    const std::string prov(header_field(header, "provenance"));
    if (d < 1 || n < 1)
        fail(ErrorKind::parse, "header needs d >= 1 and n >= 1");

    std::vector<std::int64_t> c;
    c.reserve(static_cast<std::size_t>(n * d));
    std::string line;
    std::int64_t rows = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r")
            continue;
        if (rows == n)
            fail(ErrorKind::parse, "more rows than the header's n=" + std::to_string(n));
        std::string_view rest(line);
        std::int64_t cols = 0;
        while (true) {
            const auto comma = rest.find(',');
            c.push_back(parse_int(rest.substr(0, comma), "coordinate"));
            ++cols;
            if (comma == std::string_view::npos)
                break;
            rest.remove_prefix(comma + 1);
        }
        if (cols != d)
            fail(ErrorKind::parse, "row " + std::to_string(rows + 1) + " has " + std::to_string(cols) +
                                       " columns, expected " + std::to_string(d));
        ++rows;
    }
    if (rows != n)
        fail(ErrorKind::parse, "truncated CSV: " + std::to_string(rows) + " of " + std::to_string(n) + " rows");
    try {
        return PointSet(static_cast<int>(d), den, std::move(c), {prov, "csv", Guarantee::none, false});
    } catch (const Error& e) {
        fail(ErrorKind::parse, std::string("invalid point set in CSV: ") + e.what());
    }
}

PointSet read_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::io, "cannot open '" + path + "'");
    return read_csv(in);
}

} // namespace nnld
