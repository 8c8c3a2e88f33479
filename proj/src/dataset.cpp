#include "graphlab/dataset.hpp"

#include <fstream>
#include <sstream>

#include "graphlab/errors.hpp"
#include "graphlab/format.hpp"

namespace graphlab {

bool operator==(const Dataset& a, const Dataset& b) {
    if (a.provenance != b.provenance || a.items.size() != b.items.size()) return false;
    for (std::size_t i = 0; i < a.items.size(); ++i) {
        const auto& x = a.items[i];
        const auto& y = b.items[i];
        if (x.graph.order() != y.graph.order() || x.graph.edges() != y.graph.edges()) return false;
        if (!x.graph.features().same_shape(y.graph.features())) return false;
        if (x.graph.features().values() != y.graph.features().values()) return false;
        if (x.target != y.target) return false;
    }
    return true;
}

void write_dataset(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    if (!ds.provenance.empty()) out << "# provenance: " << ds.provenance << "\n";
    for (const auto& item : ds.items) {
        const FeaturedGraph& g = item.graph;
        out << "G " << g.order() << " " << g.num_edges() << " " << g.feature_dim() << "\n";
        for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
        for (std::size_t i = 0; i < g.order(); ++i) {
            for (std::size_t j = 0; j < g.feature_dim(); ++j) {
                if (j) out << " ";
                out << format_double(g.features().at(i, j));
            }
            out << "\n";
        }
        out << "T " << item.target.size();
        for (double t : item.target) out << " " << format_double(t);
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

namespace {

class LineReader {
public:
    explicit LineReader(const std::filesystem::path& path) : in_(path) {
        if (!in_) throw IoError("cannot open: " + path.string());
    }

    // Next significant line (skips blanks and comments, collecting provenance).
    bool next(std::string& line) {
        while (std::getline(in_, raw_)) {
            ++lineno_;
            std::size_t start = raw_.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;
            if (raw_[start] == '#') {
                static const std::string key = "# provenance: ";
                if (raw_.compare(start, key.size(), key) == 0) {
                    provenance_ = raw_.substr(start + key.size());
                    if (!provenance_.empty() && provenance_.back() == '\r') provenance_.pop_back();
                }
                continue;
            }
            line = raw_.substr(start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            return true;
        }
        return false;
    }

    long lineno() const { return lineno_; }
    const std::string& provenance() const { return provenance_; }

private:
    std::ifstream in_;
    std::string raw_;
    std::string provenance_;
    long lineno_ = 0;
};

std::vector<std::string> tokens_of(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream iss(line);
    std::string t;
    while (iss >> t) toks.push_back(t);
    return toks;
}

long long read_count(const std::string& tok, const char* what, long lineno) {
    long long v;
    try {
        v = parse_int(tok);
    } catch (const ParameterError&) {
        throw ParseError(std::string("malformed ") + what + " '" + tok + "'", lineno);
    }
    if (v < 0) throw ParseError(std::string(what) + " must be nonnegative", lineno);
    return v;
}

double read_real(const std::string& tok, long lineno) {
    try {
        return parse_double(tok);
    } catch (const ParameterError&) {
        throw ParseError("malformed real '" + tok + "'", lineno);
    }
}

} // namespace

Dataset read_dataset(const std::filesystem::path& path) {
    LineReader reader(path);
    Dataset ds;
    std::string line;
    while (reader.next(line)) {
        auto toks = tokens_of(line);
        if (toks[0] != "G" || toks.size() != 4) {
            throw ParseError("expected graph header 'G n m p', got '" + line + "'", reader.lineno());
        }
        const auto n = std::size_t(read_count(toks[1], "vertex count", reader.lineno()));
        const auto m = std::size_t(read_count(toks[2], "edge count", reader.lineno()));
        const auto p = std::size_t(read_count(toks[3], "feature dimension", reader.lineno()));

        std::vector<FeaturedGraph::Edge> edges;
        edges.reserve(m);
        for (std::size_t e = 0; e < m; ++e) {
            if (!reader.next(line)) throw ParseError("unexpected end of file in edge list", reader.lineno());
            auto et = tokens_of(line);
            if (et.size() != 2) throw ParseError("expected edge 'u v', got '" + line + "'", reader.lineno());
            const auto u = read_count(et[0], "edge endpoint", reader.lineno());
            const auto v = read_count(et[1], "edge endpoint", reader.lineno());
            if (u >= (long long)n || v >= (long long)n) {
                throw ParseError("edge endpoint out of range", reader.lineno());
            }
            if (u == v) throw ParseError("self-loop", reader.lineno());
            edges.emplace_back(std::uint32_t(u), std::uint32_t(v));
        }

        std::vector<double> feat(n * p);
        for (std::size_t i = 0; i < n; ++i) {
            if (!reader.next(line)) throw ParseError("unexpected end of file in feature rows", reader.lineno());
            auto ft = tokens_of(line);
            if (ft.size() != p) {
                throw ParseError("expected " + std::to_string(p) + " feature values, got " +
                                     std::to_string(ft.size()),
                                 reader.lineno());
            }
            for (std::size_t j = 0; j < p; ++j) feat[i * p + j] = read_real(ft[j], reader.lineno());
        }

        if (!reader.next(line)) throw ParseError("unexpected end of file before target line", reader.lineno());
        auto tt = tokens_of(line);
        if (tt[0] != "T" || tt.size() < 2) {
            throw ParseError("expected target line 'T q ...', got '" + line + "'", reader.lineno());
        }
        const auto q = std::size_t(read_count(tt[1], "target count", reader.lineno()));
        if (tt.size() != 2 + q) {
            throw ParseError("expected " + std::to_string(q) + " target values, got " +
                                 std::to_string(tt.size() - 2),
                             reader.lineno());
        }
        std::vector<double> target(q);
        for (std::size_t j = 0; j < q; ++j) target[j] = read_real(tt[2 + j], reader.lineno());

        ds.items.push_back({FeaturedGraph(n, std::move(edges), Tensor(n, p, std::move(feat))),
                            std::move(target)});
    }
    ds.provenance = reader.provenance();
    return ds;
}

} // namespace graphlab
