#include "fresco/rational.hpp"

#include <cctype>
#include <sstream>

namespace fresco {

Rat rat(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::optional<Rat> rat_parse(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) return std::nullopt;
    /* mpq_class accepts "p/q" but aborts on malformed input, so vet first. */
    std::size_t slash = s.find('/');
    auto is_int = [](const std::string& t, bool allow_sign) {
        if (t.empty()) return false;
        std::size_t i = 0;
        if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    if (slash == std::string::npos) {
        if (!is_int(s, true)) return std::nullopt;
    } else {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num, true) || !is_int(den, false)) return std::nullopt;
        if (Int(den) == 0) return std::nullopt;
    }
    if (s[0] == '+') s.erase(s.begin());
    Rat q(s);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    std::ostringstream os;
    if (q.get_den() == 1)
        os << q.get_num();
    else
        os << q.get_num() << '/' << q.get_den();
    return os.str();
}

bool is_integer(const Rat& q) { return q.get_den() == 1; }

bool is_natural(const Rat& q) { return q.get_den() == 1 && q.get_num() >= 0; }

std::optional<long> as_long(const Rat& q) {
    if (q.get_den() != 1) return std::nullopt;
    if (!q.get_num().fits_slong_p()) return std::nullopt;
    return q.get_num().get_si();
}

Rat rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return Rat(f);
}

Rat class_representative(const Rat& q) {
    Rat r = q - rat_floor(q); // in [0, 1)
    if (r == 0) r = 1;        // integers represent as 1
    return r;
}

bool same_class(const Rat& a, const Rat& b) { return is_integer(a - b); }

std::string rat_list_str(const std::vector<Rat>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += rat_str(v[i]);
    }
    return out;
}

} // namespace fresco
