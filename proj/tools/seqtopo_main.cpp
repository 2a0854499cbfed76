// seqtopo: topological feature extraction and alignment-free clustering for
// symbol sequences. Subcommands: features, dist, tree, plot, pathhom.

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "seqtopo/cache.hpp"
#include "seqtopo/pipeline.hpp"
#include "seqtopo/svg.hpp"

#define SEQTOPO_VERSION "0.1.0"

namespace fs = std::filesystem;
using namespace seqtopo;

namespace {

std::string sanitize_stem(const std::string& id) {
    std::string out;
    for (char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
                   ? c
                   : '_';
    return out.empty() ? std::string("seq") : out;
}

void write_file(const fs::path& p, const std::string& data) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    out << data;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

/// Parse all inputs up front (malformed files abort the run); normalization
/// failures are per-sequence and handled by the workers.
std::vector<FastaRecord> load_raw_inputs(const std::vector<std::string>& inputs, bool plain) {
    if (inputs.empty()) throw ConfigError("no input files given");
    std::vector<FastaRecord> records;
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open input: " + path);
        auto batch = plain ? parse_plain(in) : parse_fasta(in);
        records.insert(records.end(), std::make_move_iterator(batch.begin()),
                       std::make_move_iterator(batch.end()));
    }
    dedupe_ids(records);  // unique across files too
    return records;
}

struct FeatureFlags {
    std::vector<std::string> inputs;
    bool plain = false;
    std::string ambiguity = "skip";
    FeatureOptions opt;
    std::string field = "q";
    std::string dims = "0,1,2,3";
    std::string out_dir = "seqtopo_out";
    unsigned threads = 0;
    bool no_cache = false;
    bool fail_fast = false;
    bool emit_table = false;
    bool dump_complex = false;
    bool emit_spectra = false;
    std::string config_file;
};

/// Plain key=value config with '#' comments. Command-line flags win: a key is
/// applied only when its flag was not given. Keys not read by the current
/// subcommand are ignored so one file can serve the whole pipeline.
class ConfigFile {
public:
    ConfigFile(const CLI::App* cmd, const std::string& path) : cmd_(cmd) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot read config file: " + path);
        std::string line;
        long line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto first = line.find_first_not_of(" \t\r\n");
            if (first == std::string::npos) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
            auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r\n");
                const auto e = s.find_last_not_of(" \t\r\n");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            values_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
    }

    template <class T>
    void apply(const std::string& key, T& var) const {
        auto it = values_.find(key);
        if (it == values_.end() || cmd_->count("--" + key) > 0) return;
        std::istringstream ss(it->second);
        T parsed;
        if (!(ss >> parsed)) throw ConfigError("config value for '" + key + "' is malformed");
        var = parsed;
    }

    void apply(const std::string& key, std::string& var) const {
        auto it = values_.find(key);
        if (it == values_.end() || cmd_->count("--" + key) > 0) return;
        var = it->second;
    }

    void apply(const std::string& key, bool& var) const {
        auto it = values_.find(key);
        if (it == values_.end() || cmd_->count("--" + key) > 0) return;
        if (it->second == "true" || it->second == "1")
            var = true;
        else if (it->second == "false" || it->second == "0")
            var = false;
        else
            throw ConfigError("config value for '" + key + "' must be boolean");
    }

private:
    const CLI::App* cmd_;
    std::map<std::string, std::string> values_;
};

std::vector<int> parse_dims(const std::string& s) {
    std::vector<int> dims;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        dims.push_back(std::stoi(tok));
    }
    return dims;
}

std::string effective_config(const FeatureFlags& ff, bool path_mode) {
    std::string s;
    s += "function=" + ff.opt.function + "\n";
    s += "alphabet=" + ff.opt.alphabet + "\n";
    s += "dmax=" + std::to_string(ff.opt.dmax) + "\n";
    s += "value-cap=" + std::to_string(ff.opt.value_cap) + "\n";
    s += "field=" + ff.field + "\n";
    s += "dims=" + ff.dims + "\n";
    s += "ambig=" + ff.ambiguity + "\n";
    s += std::string("plain=") + (ff.plain ? "true" : "false") + "\n";
    s += std::string("representatives=") + (ff.opt.representatives ? "true" : "false") + "\n";
    if (!path_mode) {
        s += std::string("emit-table=") + (ff.emit_table ? "true" : "false") + "\n";
        s += std::string("dump-complex=") + (ff.dump_complex ? "true" : "false") + "\n";
        s += std::string("emit-spectra=") + (ff.emit_spectra ? "true" : "false") + "\n";
    }
    return s;
}

void add_feature_options(CLI::App* cmd, FeatureFlags& ff, bool path_mode) {
    cmd->add_option("inputs", ff.inputs, "FASTA or plain-text inputs")->required();
    cmd->add_flag("--plain", ff.plain, "plain text: one sequence per line, ids seq0, seq1, ...");
    cmd->add_option("--ambig", ff.ambiguity, "policy for non-ACGT characters: skip|reject")
        ->default_val("skip");
    cmd->add_option("--function", ff.opt.function,
                    path_mode ? "filtration function: count|freq" : "filtration function: ell|ell1|count|freq")
        ->default_val(path_mode ? "count" : "ell");
    cmd->add_option("--alphabet", ff.opt.alphabet, "ordered symbol set")->default_val("ACGT");
    cmd->add_option("--dmax", ff.opt.dmax, "dimension cap")->default_val(3);
    cmd->add_option("--value-cap", ff.opt.value_cap, "window values above this become +inf")
        ->default_val(64);
    cmd->add_option("--field", ff.field, "coefficient field: gf2|q")->default_val("q");
    cmd->add_option("--dims", ff.dims, "curve dimensions, comma separated")->default_val("0,1,2,3");
    cmd->add_flag("--representatives", ff.opt.representatives, "store birth cycles in barcodes");
    cmd->add_option("--out", ff.out_dir, "output directory")->default_val("seqtopo_out");
    cmd->add_option("--threads", ff.threads, "worker threads (0 = hardware)")->default_val(0);
    cmd->add_flag("--no-cache", ff.no_cache, "disable the feature cache");
    cmd->add_flag("--fail-fast", ff.fail_fast, "stop after the first failing sequence");
    if (!path_mode) {
        cmd->add_flag("--emit-table", ff.emit_table, "also write the filtration table CSV");
        cmd->add_flag("--dump-complex", ff.dump_complex, "also write the final complex JSON");
        cmd->add_flag("--emit-spectra", ff.emit_spectra,
                      "also write full spectra JSON per (dim, grid value)");
    }
    cmd->add_option("--config", ff.config_file, "key=value config file; flags win");
}

FieldTag parse_field(const std::string& s) {
    if (s == "gf2") return FieldTag::GF2;
    if (s == "q") return FieldTag::Q;
    throw ConfigError("unknown field: " + s + " (expected gf2|q)");
}

fs::path cache_dir_for(const std::string& out_dir) {
    if (const char* env = std::getenv("SEQTOPO_CACHE_DIR")) return fs::path(env);
    return fs::path(out_dir) / ".cache";
}

/// The run's effective settings in the config-file format: feeding this file
/// back via --config reproduces the run.
std::string effective_config(const struct FeatureFlags& ff, bool path_mode);

std::string options_fingerprint(const FeatureOptions& opt, const std::string& field, bool path_mode) {
    std::string s = std::string(SEQTOPO_VERSION) + "|" + (path_mode ? "path" : "hom") + "|" +
                    opt.function + "|" + opt.alphabet + "|" + std::to_string(opt.dmax) + "|" +
                    std::to_string(opt.value_cap) + "|" + field + "|reps=" +
                    (opt.representatives ? "1" : "0") + "|dims=";
    for (int d : opt.dims) s += std::to_string(d) + ".";
    return s;
}

/// Runs fn(i) over 0..n-1 on a worker pool; collects error messages.
std::vector<std::string> parallel_for(std::size_t n, unsigned threads, bool fail_fast,
                                      const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::vector<std::string> errors;
    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) break;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(mu);
                errors.emplace_back(e.what());
                if (fail_fast) stop.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return errors;
}

int cmd_features(FeatureFlags& ff, bool path_mode, const CLI::App* cmd) {
    ConfigFile cfg(cmd, ff.config_file);
    cfg.apply("plain", ff.plain);
    cfg.apply("ambig", ff.ambiguity);
    cfg.apply("function", ff.opt.function);
    cfg.apply("alphabet", ff.opt.alphabet);
    cfg.apply("dmax", ff.opt.dmax);
    cfg.apply("value-cap", ff.opt.value_cap);
    cfg.apply("field", ff.field);
    cfg.apply("dims", ff.dims);
    cfg.apply("representatives", ff.opt.representatives);
    cfg.apply("out", ff.out_dir);
    cfg.apply("threads", ff.threads);
    cfg.apply("no-cache", ff.no_cache);
    cfg.apply("fail-fast", ff.fail_fast);
    cfg.apply("emit-table", ff.emit_table);
    cfg.apply("dump-complex", ff.dump_complex);
    cfg.apply("emit-spectra", ff.emit_spectra);

    ff.opt.field = parse_field(ff.field);
    ff.opt.dims = parse_dims(ff.dims);
    ff.opt.validate();
    if (path_mode && ff.opt.function != "count" && ff.opt.function != "freq")
        throw ConfigError("persistent path homology needs --function count or freq");

    const auto policy = ambiguity_policy_from_string(ff.ambiguity);
    const Alphabet alphabet(ff.opt.alphabet);
    auto records = load_raw_inputs(ff.inputs, ff.plain);
    fs::create_directories(ff.out_dir);
    FeatureCache cache(cache_dir_for(ff.out_dir), !ff.no_cache);

    std::string manifest;
    for (const auto& r : records) manifest += sanitize_stem(r.id) + "\t" + r.id + "\n";
    write_file(fs::path(ff.out_dir) / "manifest.tsv", manifest);
    write_file(fs::path(ff.out_dir) / "effective.conf", effective_config(ff, path_mode));

    const std::string fingerprint = options_fingerprint(ff.opt, ff.field, path_mode);

    auto run_one = [&](std::size_t i) {
        const Sequence seq = normalize(records[i].id, records[i].raw, policy, alphabet);
        const std::string stem = sanitize_stem(seq.id);
        const fs::path out(ff.out_dir);

        std::string key_src = fingerprint + "|" + seq.id + "|";
        key_src.append(reinterpret_cast<const char*>(seq.codes.data()), seq.codes.size());
        const std::string key = content_key(key_src);

        std::string payload;
        if (auto hit = cache.lookup(key)) {
            payload = *hit;
        } else if (path_mode) {
            FiltrationTable table = build_table(seq, ff.opt);
            Barcode bc = persistent_path_homology(table, ff.opt.field,
                                                  *std::max_element(ff.opt.dims.begin(),
                                                                    ff.opt.dims.end()));
            payload = barcode_to_json(bc, seq.id, ff.opt.function, ff.opt.field);
            payload += '\0';
            payload += barcode_to_csv(bc);
            cache.store(key, payload);
        } else {
            SequenceFeatures f = compute_features(seq, ff.opt);
            payload = barcode_to_json(f.barcode, seq.id, ff.opt.function, ff.opt.field);
            payload += '\0';
            payload += betti_curves_csv(f);
            payload += '\0';
            payload += gap_curves_csv(f);
            payload += '\0';
            payload += barcode_to_csv(f.barcode);
            cache.store(key, payload);
        }

        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t nul = payload.find('\0', start);
            if (nul == std::string::npos) {
                parts.push_back(payload.substr(start));
                break;
            }
            parts.push_back(payload.substr(start, nul - start));
            start = nul + 1;
        }
        if (path_mode) {
            write_file(out / (stem + ".pathhom.json"), parts.at(0));
            write_file(out / (stem + ".pathhom.csv"), parts.at(1));
        } else {
            write_file(out / (stem + ".barcode.json"), parts.at(0));
            write_file(out / (stem + ".betti.csv"), parts.at(1));
            write_file(out / (stem + ".gap.csv"), parts.at(2));
            write_file(out / (stem + ".barcode.csv"), parts.at(3));
            if (ff.emit_table)
                write_file(out / (stem + ".table.csv"),
                           table_to_csv(build_table(seq, ff.opt), alphabet));
            if (ff.dump_complex || ff.emit_spectra) {
                FilteredComplex F = build_filtered_complex(build_table(seq, ff.opt), alphabet);
                if (ff.emit_spectra)
                    write_file(out / (stem + ".spectra.json"),
                               spectra_json(F, ff.opt.dims, feature_grid(F, ff.opt)));
                if (ff.dump_complex) {
                    std::map<int, std::vector<std::string>> by_dim;
                    for (const auto& c : F.cells) by_dim[c.dim].push_back(c.name);
                    std::string json = "[";
                    bool first = true;
                    for (const auto& [d, names] : by_dim) {
                        if (!first) json += ",";
                        first = false;
                        json += "{\"dim\":" + std::to_string(d) + ",\"simplices\":[";
                        for (std::size_t k = 0; k < names.size(); ++k) {
                            if (k) json += ",";
                            json += "\"" + names[k] + "\"";
                        }
                        json += "]}";
                    }
                    write_file(out / (stem + ".complex.json"), json + "]");
                }
            }
        }
    };

    auto errors = parallel_for(records.size(), ff.threads, ff.fail_fast, run_one);
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    if (!errors.empty()) return 2;
    std::cout << (path_mode ? "pathhom: " : "features: ") << records.size() << " sequence(s) -> "
              << ff.out_dir << "\n";
    return 0;
}

struct DistFlags {
    std::string features_dir;
    std::string out_dir = "seqtopo_out";
    std::string metric = "manhattan";
    double p = 2.0;
    std::string dims = "1";
    std::string curve = "gap";
    std::string config_file;
};

int cmd_dist(DistFlags& df, const CLI::App* cmd) {
    ConfigFile cfg(cmd, df.config_file);
    cfg.apply("features", df.features_dir);
    cfg.apply("out", df.out_dir);
    cfg.apply("metric", df.metric);
    cfg.apply("p", df.p);
    cfg.apply("dims", df.dims);
    cfg.apply("curve", df.curve);
    const Metric metric = metric_from_string(df.metric);
    auto dims = parse_dims(df.dims);
    if (dims.empty()) throw ConfigError("--dims must select at least one dimension");
    if (df.curve != "gap" && df.curve != "betti")
        throw ConfigError("--curve must be gap or betti");

    const fs::path dir(df.features_dir);
    if (!fs::is_directory(dir)) throw InputError("features directory not found: " + dir.string());
    std::vector<std::pair<std::string, std::string>> stems;  // (stem, id)
    {
        const fs::path manifest = dir / "manifest.tsv";
        if (fs::exists(manifest)) {
            std::istringstream in(read_file(manifest));
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                auto tab = line.find('\t');
                stems.emplace_back(line.substr(0, tab),
                                   tab == std::string::npos ? line.substr(0, tab)
                                                            : line.substr(tab + 1));
            }
        } else {
            for (const auto& e : fs::directory_iterator(dir)) {
                const std::string name = e.path().filename().string();
                const std::string suffix = ".gap.csv";
                if (name.size() > suffix.size() &&
                    name.substr(name.size() - suffix.size()) == suffix)
                    stems.emplace_back(name.substr(0, name.size() - suffix.size()),
                                       name.substr(0, name.size() - suffix.size()));
            }
            std::sort(stems.begin(), stems.end());
        }
    }
    if (stems.empty()) throw InputError("no feature files found in " + dir.string());

    FeatureCurveSet set;
    std::vector<std::string> missing;
    const std::string file_suffix = df.curve == "gap" ? ".gap.csv" : ".betti.csv";
    const std::string col_prefix = df.curve == "gap" ? "lambda_dim" : "betti_dim";
    std::vector<std::string> selectors;
    for (int d : dims) selectors.push_back(col_prefix + std::to_string(d));

    for (const auto& [stem, id] : stems) {
        const fs::path f = dir / (stem + file_suffix);
        if (!fs::exists(f)) {
            missing.push_back(id);
            continue;
        }
        std::istringstream in(read_file(f));
        ParsedCurves pc = parse_curves_csv(in);
        std::map<std::string, Curve> fam;
        for (std::size_t c = 0; c < pc.columns.size(); ++c) {
            Curve v(static_cast<Eigen::Index>(pc.data[c].size()));
            for (std::size_t i = 0; i < pc.data[c].size(); ++i)
                v(static_cast<Eigen::Index>(i)) = pc.data[c][i];
            fam[pc.columns[c]] = std::move(v);
        }
        for (const auto& sel : selectors)
            if (!fam.count(sel)) missing.push_back(id);
        set.ids.push_back(id);
        set.curves.push_back(std::move(fam));
    }
    if (!missing.empty()) {
        std::string msg = "missing features for:";
        for (const auto& id : missing) msg += " " + id;
        throw InputError(msg);
    }

    // unify grid lengths by last-value hold
    for (const auto& sel : selectors) {
        std::vector<Curve> all;
        for (auto& fam : set.curves) all.push_back(fam.at(sel));
        pad_to_common_grid(all);
        for (std::size_t i = 0; i < set.curves.size(); ++i) set.curves[i][sel] = all[i];
    }

    DistanceMatrix dm = distance_matrix(set, metric, selectors, df.p);
    fs::create_directories(df.out_dir);
    write_file(fs::path(df.out_dir) / "matrix.csv", matrix_to_csv(dm));
    write_file(fs::path(df.out_dir) / "matrix.phy", matrix_to_phylip(dm));
    std::cout << "dist: " << dm.ids.size() << " x " << dm.ids.size() << " matrix -> "
              << df.out_dir << "\n";
    return 0;
}

struct TreeFlags {
    std::string matrix_file;
    std::string out_dir = "seqtopo_out";
    std::string linkage = "average";
    std::string config_file;
};

int cmd_tree(TreeFlags& tf, const CLI::App* cmd) {
    ConfigFile cfg(cmd, tf.config_file);
    cfg.apply("matrix", tf.matrix_file);
    cfg.apply("out", tf.out_dir);
    cfg.apply("linkage", tf.linkage);
    std::istringstream in(read_file(tf.matrix_file));
    DistanceMatrix dm = matrix_from_csv(in);
    Dendrogram tree = cluster_upgma(dm, linkage_from_string(tf.linkage));
    fs::create_directories(tf.out_dir);
    write_file(fs::path(tf.out_dir) / "tree.nwk", to_newick(tree) + "\n");
    write_file(fs::path(tf.out_dir) / "tree.svg", dendrogram_svg(tree, "cluster tree"));
    std::cout << "tree: " << dm.ids.size() << " leaves -> " << tf.out_dir << "\n";
    return 0;
}

struct PlotFlags {
    std::string barcode_file;
    std::string curve_file;
    std::string out_dir = "seqtopo_out";
    std::string config_file;
};

int cmd_plot(PlotFlags& pf, const CLI::App* cmd) {
    ConfigFile cfg(cmd, pf.config_file);
    cfg.apply("barcode", pf.barcode_file);
    cfg.apply("curves", pf.curve_file);
    cfg.apply("out", pf.out_dir);
    if (pf.barcode_file.empty() && pf.curve_file.empty())
        throw ConfigError("plot: give --barcode and/or --curves");
    fs::create_directories(pf.out_dir);
    if (!pf.barcode_file.empty()) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(read_file(pf.barcode_file));
        } catch (const nlohmann::json::exception& e) {
            throw InputError("malformed barcode JSON: " + std::string(e.what()));
        }
        Barcode b;
        b.decreasing = j.value("parameter_direction", "increasing") == std::string("decreasing");
        for (const auto& item : j.at("intervals")) {
            Interval iv;
            iv.dim = item.at("dim").get<int>();
            iv.birth = Rational(item.at("birth").get<double>());
            if (item.at("death").is_string())
                iv.essential = true;
            else
                iv.death = Rational(item.at("death").get<double>());
            b.intervals.push_back(std::move(iv));
        }
        const std::string stem = fs::path(pf.barcode_file).stem().string();
        write_file(fs::path(pf.out_dir) / (stem + ".svg"),
                   barcode_svg(b, "barcode " + j.value("id", "")));
    }
    if (!pf.curve_file.empty()) {
        std::istringstream in(read_file(pf.curve_file));
        ParsedCurves pc = parse_curves_csv(in);
        std::vector<std::pair<std::string, std::vector<double>>> series;
        for (std::size_t c = 0; c < pc.columns.size(); ++c)
            series.emplace_back(pc.columns[c], pc.data[c]);
        const std::string stem = fs::path(pf.curve_file).stem().string();
        write_file(fs::path(pf.out_dir) / (stem + ".svg"),
                   curves_svg(pc.grid, series, "curves " + stem));
    }
    std::cout << "plot -> " << pf.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"topological sequence features and alignment-free clustering"};
    app.set_version_flag("--version", SEQTOPO_VERSION);
    app.require_subcommand(1);

    FeatureFlags ff;
    auto* features = app.add_subcommand("features", "extract barcodes and curves per sequence");
    add_feature_options(features, ff, false);

    FeatureFlags pf_path;
    auto* pathhom = app.add_subcommand("pathhom", "persistent path homology barcodes");
    add_feature_options(pathhom, pf_path, true);

    DistFlags df;
    auto* dist = app.add_subcommand("dist", "pairwise curve distances");
    dist->add_option("--features", df.features_dir, "directory produced by `features`")->required();
    dist->add_option("--out", df.out_dir, "output directory")->default_val("seqtopo_out");
    dist->add_option("--metric", df.metric, "manhattan|euclidean|chebyshev|minkowski")
        ->default_val("manhattan");
    dist->add_option("--p", df.p, "minkowski exponent (p >= 1)")->default_val(2.0);
    dist->add_option("--dims", df.dims, "curve dimensions to sum over")->default_val("1");
    dist->add_option("--curve", df.curve, "curve family: gap|betti")->default_val("gap");
    dist->add_option("--config", df.config_file, "key=value config file; flags win");

    TreeFlags tf;
    auto* tree = app.add_subcommand("tree", "agglomerative clustering to Newick + SVG");
    tree->add_option("--matrix", tf.matrix_file, "distance matrix CSV")->required();
    tree->add_option("--out", tf.out_dir, "output directory")->default_val("seqtopo_out");
    tree->add_option("--linkage", tf.linkage, "average|single|complete")->default_val("average");
    tree->add_option("--config", tf.config_file, "key=value config file; flags win");

    PlotFlags pl;
    auto* plot = app.add_subcommand("plot", "static SVG plots of barcodes and curves");
    plot->add_option("--barcode", pl.barcode_file, "barcode JSON to plot");
    plot->add_option("--curves", pl.curve_file, "curve CSV to plot");
    plot->add_option("--out", pl.out_dir, "output directory")->default_val("seqtopo_out");
    plot->add_option("--config", pl.config_file, "key=value config file; flags win");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (features->parsed()) return cmd_features(ff, false, features);
        if (pathhom->parsed()) return cmd_features(pf_path, true, pathhom);
        if (dist->parsed()) return cmd_dist(df, dist);
        if (tree->parsed()) return cmd_tree(tf, tree);
        if (plot->parsed()) return cmd_plot(pl, plot);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
