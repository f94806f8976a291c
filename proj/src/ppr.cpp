#include "dppr/ppr.hpp"

#include "dppr/linsolve.hpp"
#include "dppr/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dppr {

namespace {

void validate(const PprConfig& cfg) {
    if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
        throw std::invalid_argument("ppr: beta must be in (0,1)");
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("ppr: tol must be > 0");
    if (cfg.max_iter < 1) throw std::invalid_argument("ppr: max_iter must be >= 1");
}

double isolated_mass(const Graph& g, const NodeSignal& s) {
    double lost = 0.0;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (g.degree(v) == 0) lost += s[v];
    return lost;
}

} // namespace

PprVector ppr_solve(const Graph& g, NodeId source, const PprConfig& cfg) {
    validate(cfg);
    if (source >= g.num_nodes())
        throw std::out_of_range("ppr_solve: source " + std::to_string(source) +
                                " out of range (n=" + std::to_string(g.num_nodes()) + ")");

    const double beta = cfg.beta;
    NodeSignal s(g.num_nodes(), 0.0);
    s[source] = 1.0;

    for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
        NodeSignal next = walk_apply(g, s);
        const double lost = isolated_mass(g, s);
        for (double& v : next) v *= beta;
        next[source] += (1.0 - beta) + beta * lost;

        double gap = 0.0;
        for (std::size_t i = 0; i < s.size(); ++i) gap += std::abs(next[i] - s[i]);
        s = std::move(next);
        if (gap <= cfg.tol) return PprVector{source, std::move(s)};
    }

    SolveReport best;
    best.iterations = cfg.max_iter;
    best.solution = std::move(s);
    best.final_residual = ppr_residual(g, PprVector{source, best.solution}, cfg);
    throw ConvergenceError("ppr_solve: source " + std::to_string(source) +
                               " did not converge within " + std::to_string(cfg.max_iter) +
                               " iterations (L1 gap " + std::to_string(best.final_residual) + ")",
                           std::move(best));
}

double ppr_residual(const Graph& g, const PprVector& v, const PprConfig& cfg) {
    NodeSignal rhs = walk_apply(g, v.values);
    const double lost = isolated_mass(g, v.values);
    for (double& x : rhs) x *= cfg.beta;
    rhs[v.source] += (1.0 - cfg.beta) + cfg.beta * lost;
    double r = 0.0;
    for (std::size_t i = 0; i < rhs.size(); ++i) r += std::abs(v.values[i] - rhs[i]);
    return r;
}

std::vector<PprOutcome> ppr_batch(const Graph& g, std::span<const NodeId> sources,
                                  const PprConfig& cfg, unsigned jobs) {
    std::vector<PprOutcome> out(sources.size());
    parallel_for(sources.size(), jobs, [&](std::size_t i) {
        out[i].source = sources[i];
        try {
            out[i].vector = ppr_solve(g, sources[i], cfg);
        } catch (const std::exception& e) {
            out[i].error = e.what();
        }
    });
    return out;
}

// ---------------------------------------------------------------------------
// Cache
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'P', 'P', 'R', 'V'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = (v >> (8 * i)) & 0xff;
    out.write(reinterpret_cast<const char*>(buf), 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = (v >> (8 * i)) & 0xff;
    out.write(reinterpret_cast<const char*>(buf), 8);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

bool get_u32(std::istream& in, std::uint32_t& v) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4)) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(buf[i]) << (8 * i);
    return true;
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(buf[i]) << (8 * i);
    return true;
}

bool get_f64(std::istream& in, double& v) {
    std::uint64_t bits;
    if (!get_u64(in, bits)) return false;
    v = std::bit_cast<double>(bits);
    return true;
}

std::uint64_t key_digest(const PprCacheKey& key) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    mix(key.graph_hash);
    mix(key.source);
    mix(std::bit_cast<std::uint64_t>(key.beta));
    mix(std::bit_cast<std::uint64_t>(key.tol));
    return h;
}

} // namespace

void write_ppr_binary(std::ostream& out, const PprCacheKey& key, const PprVector& v) {
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u64(out, key.graph_hash);
    put_u32(out, key.source);
    put_f64(out, key.beta);
    put_f64(out, key.tol);
    put_u32(out, std::uint32_t(v.values.size()));
    for (double x : v.values) put_f64(out, x);
}

std::optional<PprVector> read_ppr_binary(std::istream& in, const PprCacheKey& expect) {
    char magic[4];
    if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) return std::nullopt;
    std::uint32_t version, source, n;
    PprCacheKey key;
    if (!get_u32(in, version) || version != kVersion) return std::nullopt;
    if (!get_u64(in, key.graph_hash) || !get_u32(in, source)) return std::nullopt;
    if (!get_f64(in, key.beta) || !get_f64(in, key.tol)) return std::nullopt;
    key.source = source;
    if (!get_u32(in, n)) return std::nullopt;
    if (!(key == expect)) return std::nullopt;
    PprVector v;
    v.source = key.source;
    v.values.resize(n);
    for (auto& x : v.values)
        if (!get_f64(in, x)) return std::nullopt;
    return v;
}

void write_ppr_csv(std::ostream& out, const PprCacheKey& key, const PprVector& v) {
    out << "# graph_hash=" << key.graph_hash << " source=" << key.source;
    char buf[64];
    std::snprintf(buf, sizeof buf, " beta=%.17g tol=%.17g", key.beta, key.tol);
    out << buf << " n=" << v.values.size() << '\n';
    for (double x : v.values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", x);
        out << buf;
    }
}

std::optional<PprVector> read_ppr_csv(std::istream& in, const PprCacheKey& expect) {
    std::string header;
    if (!std::getline(in, header) || header.empty() || header[0] != '#') return std::nullopt;
    PprCacheKey key;
    std::size_t n = 0;
    std::istringstream hs(header.substr(1));
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) return std::nullopt;
        const std::string name = field.substr(0, eq);
        const std::string value = field.substr(eq + 1);
        if (name == "graph_hash") key.graph_hash = std::stoull(value);
        else if (name == "source") key.source = NodeId(std::stoul(value));
        else if (name == "beta") key.beta = std::stod(value);
        else if (name == "tol") key.tol = std::stod(value);
        else if (name == "n") n = std::stoul(value);
    }
    if (!(key == expect)) return std::nullopt;
    PprVector v;
    v.source = key.source;
    v.values.reserve(n);
    double x;
    while (in >> x) v.values.push_back(x);
    if (v.values.size() != n) return std::nullopt;
    return v;
}

PprCache::PprCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
}

std::filesystem::path PprCache::path_for(const PprCacheKey& key) const {
    char name[64];
    std::snprintf(name, sizeof name, "ppr_%016llx.pprv",
                  static_cast<unsigned long long>(key_digest(key)));
    return dir_ / name;
}

std::optional<PprVector> PprCache::load(const PprCacheKey& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    return read_ppr_binary(in, key);
}

void PprCache::store(const PprCacheKey& key, const PprVector& v) const {
    std::ofstream out(path_for(key), std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("ppr cache: cannot write " + path_for(key).string());
    write_ppr_binary(out, key, v);
}

} // namespace dppr
