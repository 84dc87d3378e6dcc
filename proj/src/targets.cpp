#include "rebalance/targets.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

namespace rebalance {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

double parse_perc(std::string_view text) {
    auto v = parse_number(text);
    if (!v) {
        throw DataError("percentage '" + std::string(text) + "' is not a number");
    }
    if (!(*v >= 0.0)) {
        throw DataError("percentage " + std::string(text) + " is negative");
    }
    return *v;
}

// the small slack keeps products such as 0.29 * 100 from truncating to 28
std::size_t trunc_mul(double p, std::size_t n) {
    return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

std::size_t total_of(const ClassCounts& counts) {
    std::size_t n = 0;
    for (const auto& [label, c] : counts) n += c;
    return n;
}

void check_explicit(const ClassCounts& counts, const ClassPercSpec& spec) {
    for (const auto& [label, p] : spec.perc) {
        if (!counts.contains(label)) {
            throw DataError("class '" + label + "' named in the percentages does not occur in the target");
        }
        if (!std::isfinite(p) || !(p > 0.0)) {
            throw DataError("percentage for class '" + label + "' must be positive");
        }
    }
}

ClassCounts apply_explicit(const ClassCounts& counts, const ClassPercSpec& spec) {
    ClassCounts out = counts;
    for (const auto& [label, p] : spec.perc) {
        out[label] = trunc_mul(p, counts.at(label));
    }
    return out;
}

ClassCounts inverse_counts(const ClassCounts& counts) {
    std::vector<std::size_t> sizes;
    for (const auto& [label, c] : counts) sizes.push_back(c);
    auto inv = inverse_frequency(sizes);
    ClassCounts out;
    std::size_t i = 0;
    for (const auto& [label, c] : counts) out[label] = inv[i++];
    return out;
}

void check_list(const BumpPercSpec& spec, std::size_t expected, std::string_view what) {
    if (spec.perc.size() != expected) {
        throw DataError("expected " + std::to_string(expected) + " percentage(s), one per " + std::string(what) + ", got " +
                        std::to_string(spec.perc.size()));
    }
    for (double p : spec.perc) {
        if (!std::isfinite(p) || p < 0.0) {
            throw DataError("bump percentages must be finite and non-negative");
        }
    }
}

std::vector<std::size_t> balanced_bumps(const BumpSizes& bumps) {
    std::size_t n = std::accumulate(bumps.sizes.begin(), bumps.sizes.end(), std::size_t{0});
    return std::vector<std::size_t>(bumps.sizes.size(), n / bumps.sizes.size());
}

} // namespace

ClassPercSpec ClassPercSpec::parse(std::string_view text) {
    text = trim(text);
    if (text == "balance") return balance();
    if (text == "extreme") return extreme();
    std::map<std::string, double> perc;
    for (auto item : split(text, ',')) {
        auto eq = item.rfind('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw DataError("class percentage '" + std::string(item) + "' should look like label=perc");
        }
        std::string label(trim(item.substr(0, eq)));
        if (perc.contains(label)) {
            throw DataError("class '" + label + "' given twice");
        }
        perc[label] = parse_perc(trim(item.substr(eq + 1)));
    }
    return explicit_map(std::move(perc));
}

BumpPercSpec BumpPercSpec::parse(std::string_view text) {
    text = trim(text);
    if (text == "balance") return balance();
    if (text == "extreme") return extreme();
    std::vector<double> perc;
    for (auto item : split(text, ',')) {
        perc.push_back(parse_perc(item));
    }
    return list(std::move(perc));
}

std::vector<std::size_t> inverse_frequency(const std::vector<std::size_t>& sizes) {
    double total = 0.0;
    double inv_sum = 0.0;
    for (auto n : sizes) {
        if (n == 0) {
            throw DataError("cannot invert the frequency of an empty group");
        }
        total += static_cast<double>(n);
        inv_sum += 1.0 / static_cast<double>(n);
    }
    std::vector<std::size_t> out;
    out.reserve(sizes.size());
    for (auto n : sizes) {
        out.push_back(static_cast<std::size_t>(std::llround(total * (1.0 / static_cast<double>(n)) / inv_sum)));
    }
    return out;
}

ClassCounts resolve_under(const ClassCounts& counts, const ClassPercSpec& spec) {
    if (counts.empty()) return {};
    switch (spec.mode) {
    case PercMode::Explicit: {
        check_explicit(counts, spec);
        for (const auto& [label, p] : spec.perc) {
            if (p > 1.0) {
                throw DataError("under-sampling percentage for class '" + label + "' must not exceed 1");
            }
        }
        return apply_explicit(counts, spec);
    }
    case PercMode::Balance: {
        std::size_t m = std::min_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
        ClassCounts out;
        for (const auto& [label, c] : counts) out[label] = m;
        return out;
    }
    case PercMode::Extreme: {
        std::size_t m = std::min_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
        ClassCounts out;
        for (const auto& [label, c] : counts) out[label] = m * m / c;
        return out;
    }
    }
    return counts;
}

ClassCounts resolve_over(const ClassCounts& counts, const ClassPercSpec& spec) {
    if (counts.empty()) return {};
    switch (spec.mode) {
    case PercMode::Explicit: {
        check_explicit(counts, spec);
        for (const auto& [label, p] : spec.perc) {
            if (p < 1.0) {
                throw DataError("over-sampling percentage for class '" + label + "' must be at least 1");
            }
        }
        return apply_explicit(counts, spec);
    }
    case PercMode::Balance: {
        std::size_t m = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
        ClassCounts out;
        for (const auto& [label, c] : counts) out[label] = m;
        return out;
    }
    case PercMode::Extreme: {
        std::size_t m = std::max_element(counts.begin(), counts.end(), [](auto& a, auto& b) { return a.second < b.second; })->second;
        const double mm = static_cast<double>(m) * static_cast<double>(m);
        ClassCounts out;
        for (const auto& [label, c] : counts) out[label] = static_cast<std::size_t>(std::llround(mm / static_cast<double>(c)));
        return out;
    }
    }
    return counts;
}

ClassCounts resolve_importance(const ClassCounts& counts, const ClassPercSpec& spec) {
    if (counts.empty()) return {};
    switch (spec.mode) {
    case PercMode::Explicit:
        check_explicit(counts, spec);
        return apply_explicit(counts, spec);
    case PercMode::Balance: {
        const std::size_t q = total_of(counts) / counts.size();
        ClassCounts out;
        for (const auto& [label, c] : counts) out[label] = q;
        return out;
    }
    case PercMode::Extreme:
        return inverse_counts(counts);
    }
    return counts;
}

ClassCounts resolve_synthetic(const ClassCounts& counts, const ClassPercSpec& spec) {
    if (spec.mode != PercMode::Balance || counts.empty()) {
        return resolve_importance(counts, spec);
    }
    const std::size_t n = total_of(counts);
    const std::size_t q = n / counts.size();
    const bool uneven = n % counts.size() != 0;
    ClassCounts out;
    bool first = true;
    for (const auto& [label, c] : counts) {
        out[label] = (first || !uneven || q == 0) ? q : q - 1;
        first = false;
    }
    return out;
}

BumpSizes BumpSizes::of(const std::vector<Bump>& bumps) {
    BumpSizes out;
    for (const auto& b : bumps) {
        out.kinds.push_back(b.kind);
        out.sizes.push_back(b.rows.size());
    }
    return out;
}

std::size_t BumpSizes::count(BumpKind kind) const {
    return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), kind));
}

std::size_t BumpSizes::total(BumpKind kind) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < kinds.size(); ++i) {
        if (kinds[i] == kind) n += sizes[i];
    }
    return n;
}

std::vector<std::size_t> resolve_bumps_under(const BumpSizes& bumps, const BumpPercSpec& spec) {
    const std::size_t n_normal = bumps.count(BumpKind::Normal);
    const std::size_t rare = bumps.total(BumpKind::Rare);
    if (n_normal == 0 || rare == 0) {
        throw DataError("under-sampling needs at least one Normal and one Rare bump");
    }
    if (spec.mode == PercMode::Explicit) {
        check_list(spec, n_normal, "Normal bump");
        for (double p : spec.perc) {
            if (p > 1.0) throw DataError("under-sampling percentages must not exceed 1");
        }
    }

    std::vector<std::size_t> out = bumps.sizes;
    std::size_t next = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (bumps.kinds[i] != BumpKind::Normal) continue;
        const std::size_t n = bumps.sizes[i];
        switch (spec.mode) {
        case PercMode::Explicit: out[i] = trunc_mul(spec.perc[next++], n); break;
        case PercMode::Balance: out[i] = std::min(n, rare / n_normal); break;
        case PercMode::Extreme: out[i] = std::min(n, rare * rare / n); break;
        }
    }
    return out;
}

std::vector<std::size_t> resolve_bumps_over(const BumpSizes& bumps, const BumpPercSpec& spec) {
    const std::size_t n_rare = bumps.count(BumpKind::Rare);
    if (n_rare == 0) {
        throw DataError("over-sampling needs at least one Rare bump");
    }
    if (spec.mode == PercMode::Explicit) {
        check_list(spec, n_rare, "Rare bump");
    }
    std::size_t largest_normal = 0;
    for (std::size_t i = 0; i < bumps.sizes.size(); ++i) {
        if (bumps.kinds[i] == BumpKind::Normal) largest_normal = std::max(largest_normal, bumps.sizes[i]);
    }

    std::vector<std::size_t> out = bumps.sizes;
    std::size_t next = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (bumps.kinds[i] != BumpKind::Rare) continue;
        const std::size_t n = bumps.sizes[i];
        switch (spec.mode) {
        case PercMode::Explicit: out[i] = n + trunc_mul(spec.perc[next++], n); break;
        case PercMode::Balance: out[i] = n + largest_normal; break;
        case PercMode::Extreme: out[i] = n + largest_normal * largest_normal / n; break;
        }
    }
    return out;
}

std::vector<std::size_t> resolve_bumps_mixed(const BumpSizes& bumps, const BumpPercSpec& spec) {
    if (bumps.sizes.empty()) return {};
    switch (spec.mode) {
    case PercMode::Explicit: {
        check_list(spec, bumps.sizes.size(), "bump");
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < bumps.sizes.size(); ++i) {
            const double p = spec.perc[i];
            const std::size_t n = bumps.sizes[i];
            if (bumps.kinds[i] == BumpKind::Normal) {
                if (p > 1.0) throw DataError("percentages of Normal bumps must not exceed 1");
                out.push_back(trunc_mul(p, n));
            } else {
                out.push_back(n + trunc_mul(p, n));
            }
        }
        return out;
    }
    case PercMode::Balance: return balanced_bumps(bumps);
    case PercMode::Extreme: return inverse_frequency(bumps.sizes);
    }
    return bumps.sizes;
}

std::vector<std::size_t> resolve_bumps_scaled(const BumpSizes& bumps, const BumpPercSpec& spec) {
    if (bumps.sizes.empty()) return {};
    switch (spec.mode) {
    case PercMode::Explicit: {
        check_list(spec, bumps.sizes.size(), "bump");
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < bumps.sizes.size(); ++i) {
            out.push_back(trunc_mul(spec.perc[i], bumps.sizes[i]));
        }
        return out;
    }
    case PercMode::Balance: return balanced_bumps(bumps);
    case PercMode::Extreme: return inverse_frequency(bumps.sizes);
    }
    return bumps.sizes;
}

} // namespace rebalance
