#pragma once

#include "fresco/presentation.hpp"

#include <string>

namespace fresco {

/* Line-oriented key=value presentation file:

       # chain data
       rank = 3
       lambda = 4, 4, 5
       s1 = 1
       s2 = 1 + b^2
       truncation = 64
       log_cap = 2

   rank and lambda are required, s1..s{k-1} are required for rank >= 2 and
   must carry constant term 1. truncation is optional (default
   max(64, 4*rank)) and must be >= 4*rank; log_cap is optional (default
   rank - 1). '#' starts a comment. Errors carry the line number. The file
   stores plain coefficient data: a series coefficient not written is zero,
   so rendering a presentation whose trusted window sits below its
   truncation emits the window as the new truncation. */
struct PresentationFile {
    FrescoPresentation pres;
    int log_cap = 0;
};

/* trunc_override > 0 replaces the file's (or default) truncation; the
   >= 4*rank floor still applies. */
PresentationFile parse_presentation_text(const std::string& text, int trunc_override = 0);
PresentationFile load_presentation(const std::string& path, int trunc_override = 0);

std::string render_presentation_file(const FrescoPresentation& p, int log_cap = -1);

/* FNV-1a 64 over the canonical rendering; the input identity quoted by
   reports. */
std::string presentation_digest(const FrescoPresentation& p);

/* Same chain data over a fresh truncation. Requires every series window to
   be full (as file-parsed presentations are), so the data is exact. */
FrescoPresentation reinstantiate(const FrescoPresentation& p, int new_trunc);

} // namespace fresco
