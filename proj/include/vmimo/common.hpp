#pragma once

// Core types shared by every stage of the link simulation: complex baseband
// scalars, 2x2 channel matrices, the run configuration, dB conversions and
// the deterministic substream RNG contract.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vmimo {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643;

enum class Modulation { Qpsk, Qam16 };
enum class RelayMode { Voronoi, Tsvq, GaussianBound, Lossless, None };

// Disabled: no CFO modeled at all (ideal oscillators; used by the VQ-only
// scenarios). Off: CFOs rotate the received streams but nobody compensates.
enum class CfoMode { Disabled, Off, Independent, JointSync, Perfect };

enum class LlrMode { Exact, MaxLog };

inline int bits_per_symbol(Modulation mod) {
    return mod == Modulation::Qpsk ? 2 : 4;
}

inline const char* to_string(Modulation m) {
    return m == Modulation::Qpsk ? "qpsk" : "16qam";
}
inline const char* to_string(RelayMode m) {
    switch (m) {
        case RelayMode::Voronoi: return "voronoi";
        case RelayMode::Tsvq: return "tsvq";
        case RelayMode::GaussianBound: return "gauss";
        case RelayMode::Lossless: return "lossless";
        case RelayMode::None: return "none";
    }
    return "?";
}
inline const char* to_string(CfoMode m) {
    switch (m) {
        case CfoMode::Disabled: return "disabled";
        case CfoMode::Off: return "off";
        case CfoMode::Independent: return "independent";
        case CfoMode::JointSync: return "joint";
        case CfoMode::Perfect: return "perfect";
    }
    return "?";
}
inline const char* to_string(LlrMode m) {
    return m == LlrMode::Exact ? "exact" : "maxlog";
}

inline bool is_finite(cxd v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// 2x2 complex matrix, row-major. Row 0 is the relay link, row 1 the
/// destination link throughout the project.
struct Matrix2 {
    std::array<cxd, 4> a{};

    cxd& operator()(int r, int c) { return a[static_cast<size_t>(2 * r + c)]; }
    cxd operator()(int r, int c) const { return a[static_cast<size_t>(2 * r + c)]; }

    std::array<cxd, 2> mul(const std::array<cxd, 2>& x) const {
        return {a[0] * x[0] + a[1] * x[1], a[2] * x[0] + a[3] * x[1]};
    }
};

// ---------------------------------------------------------------------------
// dB / power conversions. Total transmit power Es is normalized to 1, so the
// energy per information bit is Eb = Es/(m*Rb) and the complex noise variance
// per received sample is N0 (N0/2 per real dimension).
// ---------------------------------------------------------------------------

inline double ebn0_db_to_n0(double ebn0_db, Modulation mod, double rb = 0.5) {
    if (!std::isfinite(ebn0_db)) throw std::invalid_argument("ebn0_db must be finite");
    const double eb = 1.0 / (bits_per_symbol(mod) * rb);
    return eb * std::pow(10.0, -ebn0_db / 10.0);
}

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin_to_db(double lin) { return 10.0 * std::log10(lin); }

// ---------------------------------------------------------------------------
// Deterministic randomness. Every consumer derives an independent substream
// from (master_seed, block_index, purpose_tag); identical triples give
// identical draws regardless of execution order or worker count. Gaussians
// are produced by an explicit Box-Muller transform so draws do not depend on
// library-specific distribution internals.
// ---------------------------------------------------------------------------

inline uint64_t splitmix64_next(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

class Substream {
public:
    explicit Substream(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(eng_()) * n) >> 64);
    }

    uint8_t bit() { return static_cast<uint8_t>(eng_() >> 63); }

    /// Circularly symmetric complex Gaussian CN(0, variance); real and
    /// imaginary parts independent with variance/2 each.
    cxd crandn(double variance) {
        if (variance < 0.0) throw std::invalid_argument("crandn: negative variance");
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-variance * std::log(u1));
        return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
    }

private:
    std::mt19937_64 eng_;
};

class RandomSource {
public:
    explicit RandomSource(uint64_t master_seed) : master_(master_seed) {}

    Substream stream(uint64_t block, std::string_view tag) const {
        uint64_t s = master_;
        (void)splitmix64_next(s);
        s ^= fnv1a64(tag);
        (void)splitmix64_next(s);
        s ^= block + 1;
        uint64_t seed = splitmix64_next(s);
        return Substream(seed);
    }

    uint64_t master_seed() const { return master_; }

private:
    uint64_t master_;
};

// ---------------------------------------------------------------------------
// Run configuration.
// ---------------------------------------------------------------------------

struct SimConfig {
    Modulation modulation = Modulation::Qpsk;
    double code_rate = 0.5;  // fixed rate-1/2 [133,171] code
    int quant_bits = 4;      // C, bits per compressed complex sample
    int tsvq_c1 = 2, tsvq_c2 = 1, tsvq_c3 = 1;
    RelayMode relay_mode = RelayMode::Voronoi;
    CfoMode cfo_mode = CfoMode::Disabled;
    double delta_hz = 0.0;  // clock synchronization error, f_rn = f_dn + delta
    std::vector<double> ebn0_db_list{0, 2, 4, 6, 8, 10};
    uint64_t n_blocks = 20000;
    int block_len = 196;            // L, symbols per fading block
    double symbol_interval = 71.4e-6;  // t_s, seconds
    uint64_t master_seed = 1;
    LlrMode llr_mode = LlrMode::Exact;
    bool interleaver_per_block = false;
    int subframe_len = 14;  // symbols between pilot-aided phase re-anchors
    uint64_t early_stop_block_errors = 200;  // 0 disables early stop
    int workers = 0;                         // 0 -> hardware concurrency

    int bits_m() const { return bits_per_symbol(modulation); }

    /// Coded bits per fading block: one terminated codeword fills the block.
    int coded_len() const { return 2 * bits_m() * block_len; }

    /// Information bits per block, K = Nt*m*L*Rb - 6.
    int info_len() const { return coded_len() / 2 - 6; }

    int tsvq_total_bits() const { return tsvq_c1 + tsvq_c2 + tsvq_c3; }

    void validate() const {
        if (block_len < 2) throw std::invalid_argument("block_len must be >= 2");
        if (symbol_interval <= 0) throw std::invalid_argument("symbol_interval must be > 0");
        if (code_rate != 0.5) throw std::invalid_argument("only the rate-1/2 code is supported");
        if (quant_bits < 1 || quant_bits > 16) throw std::invalid_argument("quant_bits out of range");
        if (relay_mode == RelayMode::Tsvq) {
            if (tsvq_c1 != 2) throw std::invalid_argument("tsvq stage 1 rate must be 2 bits/sample");
            if (tsvq_c2 < 0 || tsvq_c3 < 0) throw std::invalid_argument("tsvq rates must be >= 0");
            if (tsvq_total_bits() != quant_bits)
                throw std::invalid_argument("tsvq rates must sum to the quantization rate C");
        }
        if (info_len() <= 0) throw std::invalid_argument("block too short for a terminated codeword");
        if (subframe_len < 1) throw std::invalid_argument("subframe_len must be >= 1");
        if (n_blocks < 1) throw std::invalid_argument("n_blocks must be >= 1");
    }

    /// Stable hash over every field that affects results, for provenance.
    uint64_t hash() const {
        std::string s;
        s += to_string(modulation);
        s += ';' + std::to_string(code_rate);
        s += ';' + std::to_string(quant_bits);
        s += ';' + std::to_string(tsvq_c1) + ',' + std::to_string(tsvq_c2) + ',' + std::to_string(tsvq_c3);
        s += ';';
        s += to_string(relay_mode);
        s += ';';
        s += to_string(cfo_mode);
        s += ';' + std::to_string(delta_hz);
        for (double e : ebn0_db_list) s += ',' + std::to_string(e);
        s += ';' + std::to_string(n_blocks);
        s += ';' + std::to_string(block_len);
        s += ';' + std::to_string(symbol_interval);
        s += ';' + std::to_string(master_seed);
        s += ';';
        s += to_string(llr_mode);
        s += ';' + std::to_string(interleaver_per_block);
        s += ';' + std::to_string(subframe_len);
        s += ';' + std::to_string(early_stop_block_errors);
        return fnv1a64(s);
    }
};

/// Wilson 95% score-interval half-width for a ratio k/n.
inline double wilson_halfwidth(uint64_t k, uint64_t n, double z = 1.959963984540054) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(k) / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    const double z2 = z * z;
    return z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / (1.0 + z2 / nn);
}

}  // namespace vmimo
