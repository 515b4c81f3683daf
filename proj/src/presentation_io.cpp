#include "fresco/presentation_io.hpp"

#include "fresco/errors.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>

namespace fresco {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw ParseError("line " + std::to_string(line) + ": " + what);
}

long parse_int(const std::string& text, int line, const std::string& key) {
    try {
        std::size_t used = 0;
        long v = std::stol(text, &used);
        if (used != text.size()) fail(line, key + " is not an integer: \"" + text + "\"");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        fail(line, key + " is not an integer: \"" + text + "\"");
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(strip(cur));
    return out;
}

} // namespace

PresentationFile parse_presentation_text(const std::string& text, int trunc_override) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    int rank = -1, truncation = -1, log_cap = -1;
    std::vector<Rat> lambda;
    std::map<int, std::pair<std::string, int>> series; // index -> (text, line)
    bool have_lambda = false;

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = strip(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        if (value.empty()) fail(lineno, "empty value for \"" + key + "\"");

        if (key == "rank") {
            if (rank >= 0) fail(lineno, "duplicate rank");
            long r = parse_int(value, lineno, "rank");
            if (r < 1 || r > 64) fail(lineno, "rank out of range [1, 64]");
            rank = static_cast<int>(r);
        } else if (key == "lambda") {
            if (have_lambda) fail(lineno, "duplicate lambda");
            have_lambda = true;
            for (const std::string& item : split_commas(value)) {
                auto q = rat_parse(item);
                if (!q) fail(lineno, "bad rational \"" + item + "\"");
                lambda.push_back(*q);
            }
        } else if (key == "truncation") {
            if (truncation >= 0) fail(lineno, "duplicate truncation");
            long t = parse_int(value, lineno, "truncation");
            if (t < 1 || t > 4096) fail(lineno, "truncation out of range [1, 4096]");
            truncation = static_cast<int>(t);
        } else if (key == "log_cap") {
            if (log_cap >= 0) fail(lineno, "duplicate log_cap");
            long c = parse_int(value, lineno, "log_cap");
            if (c < 0 || c > 63) fail(lineno, "log_cap out of range [0, 63]");
            log_cap = static_cast<int>(c);
        } else if (key.size() >= 2 && key[0] == 's') {
            long idx = parse_int(key.substr(1), lineno, "series index");
            if (idx < 1 || idx > 63) fail(lineno, "series index out of range");
            if (series.count(static_cast<int>(idx))) fail(lineno, "duplicate " + key);
            series[static_cast<int>(idx)] = {value, lineno};
        } else {
            fail(lineno, "unknown key \"" + key + "\"");
        }
    }

    if (rank < 0) fail(lineno, "missing rank");
    if (!have_lambda) fail(lineno, "missing lambda");
    if (static_cast<int>(lambda.size()) != rank)
        fail(lineno, "lambda has " + std::to_string(lambda.size()) + " entries, rank is " +
                         std::to_string(rank));

    if (truncation < 0) truncation = std::max(64, 4 * rank);
    if (trunc_override > 0) truncation = trunc_override;
    if (truncation < 4 * rank)
        throw ValidationError("truncation " + std::to_string(truncation) +
                              " below the floor 4*rank = " + std::to_string(4 * rank));

    PresentationFile out;
    out.pres.trunc = truncation;
    out.pres.lambda = std::move(lambda);
    for (int j = 1; j < rank; ++j) {
        auto it = series.find(j);
        if (it == series.end())
            fail(lineno, "missing s" + std::to_string(j) + " (rank " + std::to_string(rank) +
                             " needs s1..s" + std::to_string(rank - 1) + ")");
        try {
            out.pres.s.push_back(series_parse(it->second.first, truncation));
        } catch (const ParseError& e) {
            fail(it->second.second, std::string("s") + std::to_string(j) + ": " + e.what());
        }
    }
    for (const auto& [idx, val] : series)
        if (idx >= rank) fail(val.second, "series s" + std::to_string(idx) + " beyond rank");

    out.log_cap = (log_cap >= 0) ? log_cap : rank - 1;
    out.pres.validate();
    return out;
}

PresentationFile load_presentation(const std::string& path, int trunc_override) {
    std::ifstream in(path);
    if (!in) throw FrescoError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_presentation_text(buf.str(), trunc_override);
}

std::string render_presentation_file(const FrescoPresentation& p, int log_cap) {
    std::ostringstream out;
    out << "rank = " << p.rank() << "\n";
    out << "lambda = ";
    for (int j = 0; j < p.rank(); ++j) {
        if (j) out << ", ";
        out << rat_str(p.lambda[static_cast<std::size_t>(j)]);
    }
    out << "\n";
    for (int j = 1; j < p.rank(); ++j)
        out << "s" << j << " = " << series_str(p.S(j)) << "\n";
    out << "truncation = " << std::min(p.trunc, p.window()) << "\n";
    if (log_cap >= 0) out << "log_cap = " << log_cap << "\n";
    return out.str();
}

std::string presentation_digest(const FrescoPresentation& p) {
    const std::string text = render_presentation_file(p);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

FrescoPresentation reinstantiate(const FrescoPresentation& p, int new_trunc) {
    FrescoPresentation out;
    out.trunc = new_trunc;
    out.lambda = p.lambda;
    for (const auto& s : p.s) {
        if (s.window() < p.trunc)
            throw PrecisionInsufficientError(
                "cannot re-truncate a presentation with reduced windows");
        TruncSeries t(new_trunc);
        for (int n = 0; n <= std::min(s.window(), new_trunc); ++n) t.set(n, s[n]);
        out.s.push_back(t);
    }
    return out;
}

} // namespace fresco
