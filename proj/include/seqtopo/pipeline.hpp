#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "seqtopo/errors.hpp"
#include "seqtopo/filtration.hpp"
#include "seqtopo/path_homology.hpp"
#include "seqtopo/persistence.hpp"
#include "seqtopo/phylo.hpp"
#include "seqtopo/seq_io.hpp"
#include "seqtopo/spectral.hpp"

namespace seqtopo {

struct FeatureOptions {
    std::string function = "ell";  // ell | ell1 | count | freq
    std::string alphabet = "ACGT";
    int dmax = 3;
    long value_cap = 64;
    FieldTag field = FieldTag::Q;
    std::vector<int> dims = {0, 1, 2, 3};
    bool representatives = false;

    void validate() const {
        if (function != "ell" && function != "ell1" && function != "count" && function != "freq")
            throw ConfigError("unknown filtration function: " + function);
        int alphabet_size = 0;
        try {
            alphabet_size = Alphabet(alphabet).size();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("bad alphabet: ") + e.what());
        }
        if (dmax < 0 || dmax > 8) throw ConfigError("dmax out of range [0, 8]");
        if (tuple_count(dmax + 1, alphabet_size) > 2'000'000)
            throw ConfigError("alphabet^(dmax+1) too large");
        if (value_cap < 0) throw ConfigError("value_cap must be >= 0");
        if (dims.empty()) throw ConfigError("at least one curve dimension required");
        for (int d : dims)
            if (d < 0 || d > dmax) throw ConfigError("curve dimension out of [0, dmax]");
    }
};

inline FiltrationTable build_table(const Sequence& seq, const FeatureOptions& opt) {
    const int b = static_cast<int>(opt.alphabet.size());
    if (opt.function == "ell") return min_window_table(seq, opt.dmax, opt.value_cap, b);
    if (opt.function == "ell1") return first_occurrence_table(seq, opt.dmax, opt.value_cap, b);
    if (opt.function == "count") return substring_count_table(seq, opt.dmax, b);
    if (opt.function == "freq") return frequency_table(seq, opt.dmax, b);
    throw ConfigError("unknown filtration function: " + opt.function);
}

/// Filtered complex for a function choice. Non-face-preserving sublevel
/// tables (ell1 can violate the face inequality) are repaired with the
/// face-preserving modification; superlevel tables take the closure route.
inline FilteredComplex build_filtered_complex(const FiltrationTable& table,
                                              const Alphabet& alphabet = Alphabet::dna()) {
    if (table.direction == Direction::Sublevel) {
        if (table.face_preserving) return sublevel_filtered_complex(table, &alphabet);
        return sublevel_filtered_complex(face_preserving_modification(table), &alphabet);
    }
    return superlevel_filtered_complex(table, &alphabet);
}

struct SequenceFeatures {
    std::string id;
    Barcode barcode;
    std::vector<Rational> curve_grid;  // native parameter values
    std::vector<BettiCurve> betti;     // one per requested dim
    std::vector<SpectralGapCurve> gaps;
};

/// Curve grid. Increasing filtrations (ell, ell1): integer steps
/// 0..value_cap. Frequency filtrations: the fixed descending grid k/G for
/// k = G..0 with G = value_cap, so curves of different sequences share one
/// absolute parameter axis. Count filtrations: the sequence's own descending
/// thresholds with the 0 endpoint (counts scale with sequence length, so
/// there is no universal absolute grid; these curves are step-indexed).
inline std::vector<Rational> feature_grid(const FilteredComplex& F, const FeatureOptions& opt) {
    std::vector<Rational> grid;
    if (!F.decreasing) {
        for (long t = 0; t <= opt.value_cap; ++t) grid.push_back(make_rational(t));
    } else if (opt.function == "freq") {
        const long g = std::max<long>(1, opt.value_cap);
        for (long k = g; k >= 0; --k) grid.push_back(make_rational(k, g));
    } else {
        grid.assign(F.grid.rbegin(), F.grid.rend());
        if (grid.empty() || grid.back() != 0) grid.push_back(Rational(0));
    }
    return grid;
}

inline SequenceFeatures compute_features(const Sequence& seq, const FeatureOptions& opt) {
    opt.validate();
    const Alphabet alphabet(opt.alphabet);
    FiltrationTable table = build_table(seq, opt);
    FilteredComplex F = build_filtered_complex(table, alphabet);
    SequenceFeatures out;
    out.id = seq.id;
    const int maxdim = *std::max_element(opt.dims.begin(), opt.dims.end());
    out.barcode = persistent_homology(F, opt.field, maxdim, opt.representatives);
    out.curve_grid = feature_grid(F, opt);
    for (int d : opt.dims) {
        out.betti.push_back(betti_curve(out.barcode, out.curve_grid, d));
        out.gaps.push_back(spectral_gap_curve(F, d, out.curve_grid));
    }
    return out;
}

/// "t,betti_dim0,..." / "t,lambda_dim0,..." on the feature grid.
inline std::string betti_curves_csv(const SequenceFeatures& f) {
    std::string out = "t";
    for (const auto& c : f.betti) out += ",betti_dim" + std::to_string(c.dim);
    out += "\n";
    for (std::size_t i = 0; i < f.curve_grid.size(); ++i) {
        out += to_string(f.curve_grid[i]);
        for (const auto& c : f.betti) out += "," + std::to_string(c.values[i]);
        out += "\n";
    }
    return out;
}

inline std::string gap_curves_csv(const SequenceFeatures& f) {
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    std::string out = "t";
    for (const auto& c : f.gaps) out += ",lambda_dim" + std::to_string(c.dim);
    out += "\n";
    for (std::size_t i = 0; i < f.curve_grid.size(); ++i) {
        out += to_string(f.curve_grid[i]);
        for (const auto& c : f.gaps) out += "," + fmt(c.values[i]);
        out += "\n";
    }
    return out;
}

/// Full spectra per (dim, grid value) as JSON, for runs that need more than
/// the gap: [{"dim": d, "t": x, "eigenvalues": [...], "zero_count": n,
/// "spectral_gap": g}, ...].
inline std::string spectra_json(const FilteredComplex& F, const std::vector<int>& dims,
                                const std::vector<Rational>& grid) {
    auto num = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return std::string(buf);
    };
    std::string out = "[";
    bool first = true;
    for (int d : dims)
        for (const auto& t : grid) {
            SpectrumResult s = spectrum(combinatorial_laplacian(F, d, t));
            if (!first) out += ",";
            first = false;
            out += "{\"dim\":" + std::to_string(d) + ",\"t\":" + num(to_double(t)) +
                   ",\"eigenvalues\":[";
            for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
                if (i) out += ",";
                out += num(s.eigenvalues[i]);
            }
            out += "],\"zero_count\":" + std::to_string(s.zero_count) +
                   ",\"spectral_gap\":" + num(s.spectral_gap) + "}";
        }
    return out + "]";
}

/// Parses a gap/betti curve CSV back into a grid and named columns.
struct ParsedCurves {
    std::vector<double> grid;               // the t column
    std::vector<std::string> columns;       // e.g. "lambda_dim1"
    std::vector<std::vector<double>> data;  // per column
};

inline ParsedCurves parse_curves_csv(std::istream& in) {
    ParsedCurves out;
    std::string line;
    if (!std::getline(in, line)) throw InputError("curve CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t pos = line.find(',');
    if (pos == std::string::npos) throw InputError("curve CSV: no data columns");
    while (pos != std::string::npos) {
        std::size_t next = line.find(',', pos + 1);
        out.columns.push_back(line.substr(pos + 1, next == std::string::npos ? std::string::npos
                                                                             : next - pos - 1));
        pos = next;
    }
    out.data.assign(out.columns.size(), {});
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        pos = line.find(',');
        // t values are exact rationals ("5/4") or integers
        out.grid.push_back(to_double(rational_from_string(line.substr(0, pos))));
        std::size_t col = 0;
        while (pos != std::string::npos) {
            if (col >= out.columns.size()) throw InputError("curve CSV: too many columns");
            std::size_t next = line.find(',', pos + 1);
            out.data[col].push_back(std::stod(line.substr(
                pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1)));
            pos = next;
            ++col;
        }
        if (col != out.columns.size()) throw InputError("curve CSV: ragged row");
    }
    return out;
}

/// Pads every curve to the longest length by holding its last value (curves
/// are constant once the underlying complex saturates).
inline void pad_to_common_grid(std::vector<Curve>& curves) {
    Eigen::Index maxlen = 0;
    for (const auto& c : curves) maxlen = std::max(maxlen, c.size());
    for (auto& c : curves) {
        if (c.size() == maxlen) continue;
        if (c.size() == 0) throw InputError("empty curve cannot be padded");
        Curve p(maxlen);
        p.head(c.size()) = c;
        p.tail(maxlen - c.size()).setConstant(c(c.size() - 1));
        c = std::move(p);
    }
}

}  // namespace seqtopo
