#include "cvdv/povm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "cvdv/errors.hpp"

namespace cvdv {

OutcomeLabel OutcomeLabel::bell(int n, int m) {
    if (n < 0 || m <= n) throw domain_error("Bell label needs 0 <= n < m");
    return {Kind::Bell, n, m};
}

OutcomeLabel OutcomeLabel::qudit(int d) {
    if (d < 1) throw domain_error("qudit dimension must be positive");
    return {Kind::Qudit, d, 0};
}

std::string OutcomeLabel::str() const {
    char buf[32];
    switch (kind) {
        case Kind::Fail:
            return "Fail";
        case Kind::Bell:
            std::snprintf(buf, sizeof buf, "Bell(%d,%d)", n, m);
            return buf;
        case Kind::Qudit:
            std::snprintf(buf, sizeof buf, "Qudit(%d)", n);
            return buf;
    }
    return "?";
}

OutcomeLabel OutcomeLabel::parse(const std::string& text) {
    if (text == "Fail") return fail();
    int a = 0, b = 0;
    if (std::sscanf(text.c_str(), "Bell(%d,%d)", &a, &b) == 2) return bell(a, b);
    if (std::sscanf(text.c_str(), "Qudit(%d)", &a) == 1) return qudit(a);
    throw domain_error("unparseable outcome label: " + text);
}

bool OutcomeLabel::operator<(const OutcomeLabel& o) const {
    return std::tie(kind, n, m) < std::tie(o.kind, o.n, o.m);
}

double OutcomeSet::total_probability() const {
    double s = 0.0;
    for (auto it = outcomes.rbegin(); it != outcomes.rend(); ++it)
        s += it->probability;
    return s;
}

void OutcomeSet::sort_descending() {
    std::stable_sort(outcomes.begin(), outcomes.end(),
                     [](const Outcome& a, const Outcome& b) {
                         if (a.probability != b.probability)
                             return a.probability > b.probability;
                         return a.label < b.label;
                     });
}

double completeness_deviation(const OutcomeSet& set, int k_max) {
    if (k_max < 0 || k_max >= set.dim)
        throw domain_error("k_max outside the truncated subspace");
    double worst = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        double s = 0.0;
        for (const Outcome& o : set.outcomes) {
            if (k < o.kraus.dim()) {
                double e = o.kraus.diag[k];
                s += e * e;
            }
        }
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

}  // namespace cvdv
