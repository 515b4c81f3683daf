#include "fresco/presentation_io.hpp"
#include "fresco/presentation.hpp"
#include <cstdio>

using namespace fresco;

static FrescoPresentation make(std::vector<Rat> lambda, std::vector<std::string> series, int trunc) {
    FrescoPresentation p;
    p.trunc = trunc;
    p.lambda = std::move(lambda);
    for (const auto& s : series) p.s.push_back(series_parse(s, trunc));
    p.validate();
    return p;
}

int main() {
    std::vector<FrescoPresentation> zoo = {
        make({Rat(7,2)}, {}, 40),
        make({Rat(5,2),Rat(5,2)}, {"1+b"}, 40),
        make({Rat(4),Rat(4),Rat(5)}, {"1","1+b^2"}, 40),
        make({Rat(5),Rat(5),Rat(5),Rat(5)}, {"1","1+b^2","1"}, 40),
        make({Rat(4),Rat(4),Rat(5),Rat(7)}, {"1+b","1","1+2*b^3+3*b^5"}, 40),
    };
    for (const auto& p : zoo) {
        std::string text = render_presentation_file(p, p.rank()-1);
        PresentationFile f = parse_presentation_text(text);
        bool ok = f.pres.lambda == p.lambda && f.pres.rank() == p.rank();
        for (int j = 1; j < p.rank() && ok; ++j)
            ok = series_str(f.pres.S(j)) == series_str(p.S(j));
        std::printf("rank=%d roundtrip=%s log_cap=%d digest=%s trunc=%d\n",
                    p.rank(), ok ? "ok" : "FAIL", f.log_cap,
                    presentation_digest(p).c_str(), f.pres.trunc);
    }
    // error paths
    try { parse_presentation_text("rank = 2\nlambda = 1\ns1 = 1\n"); std::puts("FAIL no-throw"); }
    catch (const ParseError& e) { std::printf("count err: %s\n", e.what()); }
    try { parse_presentation_text("rank = 2\nlambda = 3, 4\n"); std::puts("FAIL no-throw"); }
    catch (const ParseError& e) { std::printf("missing s1: %s\n", e.what()); }
    try { parse_presentation_text("rank = 2\nlambda = 3, 4\ns1 = 1\ntruncation = 5\n"); std::puts("FAIL no-throw"); }
    catch (const ValidationError& e) { std::printf("floor: %s\n", e.what()); }
    try { parse_presentation_text("rank = 2\nlambda = 3, 4\ns1 = 1+q\n"); std::puts("FAIL no-throw"); }
    catch (const ParseError& e) { std::printf("series err: %s\n", e.what()); }
    // comments, override, env-free default
    PresentationFile f = parse_presentation_text("# demo\nrank = 1\nlambda = 7/2  # generator\n");
    std::printf("default trunc=%d (expect 64)\n", f.pres.trunc);
    PresentationFile g = parse_presentation_text("rank = 1\nlambda = 7/2\n", 100);
    std::printf("override trunc=%d (expect 100)\n", g.pres.trunc);
    // reinstantiate
    FrescoPresentation big = reinstantiate(zoo[3], 80);
    std::printf("reinstantiate trunc=%d rank=%d s2[2]=%s\n", big.trunc, big.rank(),
                rat_str(big.S(2)[2]).c_str());
    return 0;
}
