#pragma once

// BICM transmitter: terminated [133,171]_octal rate-1/2 convolutional code,
// random bit interleaver, round-robin demux onto two antennas and Gray-mapped
// QPSK / 16QAM with per-antenna power Es/Nt = 0.5.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vmimo/common.hpp"

namespace vmimo {

inline constexpr int kConvMemory = 6;
inline constexpr uint32_t kPolyG1 = 0133;  // taps on [u(t), u(t-1), ..., u(t-6)], MSB first
inline constexpr uint32_t kPolyG2 = 0171;

using BitBuffer = std::vector<uint8_t>;

inline uint8_t parity7(uint32_t v) {
    v ^= v >> 4;
    v ^= v >> 2;
    v ^= v >> 1;
    return static_cast<uint8_t>(v & 1u);
}

/// Encode K info bits into 2(K+6) coded bits; the trellis is flushed with six
/// zero tail bits. Output order per step is (g1, g2).
inline BitBuffer conv_encode(const BitBuffer& info) {
    BitBuffer out;
    out.reserve(2 * (info.size() + kConvMemory));
    uint32_t state = 0;  // bits 5..0 = u(t-1)..u(t-6)
    auto step = [&](uint8_t u) {
        const uint32_t reg = (static_cast<uint32_t>(u) << 6) | state;
        out.push_back(parity7(reg & kPolyG1));
        out.push_back(parity7(reg & kPolyG2));
        state = reg >> 1;
    };
    for (uint8_t b : info) step(b & 1u);
    for (int i = 0; i < kConvMemory; ++i) step(0);
    return out;
}

// ---------------------------------------------------------------------------
// Random bit interleaver.
// ---------------------------------------------------------------------------

struct Interleaver {
    std::vector<uint32_t> perm;  // out[perm[i]] = in[i]

    size_t size() const { return perm.size(); }
};

inline Interleaver make_interleaver(size_t n, Substream rng) {
    Interleaver pi;
    pi.perm.resize(n);
    for (size_t i = 0; i < n; ++i) pi.perm[i] = static_cast<uint32_t>(i);
    for (size_t i = n; i > 1; --i) {
        const size_t j = rng.below(i);
        std::swap(pi.perm[i - 1], pi.perm[j]);
    }
    return pi;
}

template <typename T>
std::vector<T> interleave(const std::vector<T>& in, const Interleaver& pi) {
    if (in.size() != pi.size()) throw std::invalid_argument("interleave: length mismatch");
    std::vector<T> out(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[pi.perm[i]] = in[i];
    return out;
}

template <typename T>
std::vector<T> deinterleave(const std::vector<T>& in, const Interleaver& pi) {
    if (in.size() != pi.size()) throw std::invalid_argument("deinterleave: length mismatch");
    std::vector<T> out(in.size());
    for (size_t i = 0; i < in.size(); ++i) out[i] = in[pi.perm[i]];
    return out;
}

// ---------------------------------------------------------------------------
// Constellations. The symbol index is the transmitted bit pattern read
// MSB-first, i.e. index = b0 b1 ... b_{m-1}. Per axis the labeling is
// reflected Gray with bit 0 mapping to the positive side:
//   QPSK:  b0 -> I sign, b1 -> Q sign, points (+-1 +-j)/2
//   16QAM: (b0,b1) -> I level, (b2,b3) -> Q level, levels {+3,+1,-1,-3}/sqrt(20)
//          for bit pairs {00,01,11,10}
// Both alphabets have average power Es/Nt = 0.5.
// ---------------------------------------------------------------------------

struct Constellation {
    Modulation mod;
    int m;                    // bits per symbol
    std::vector<cxd> points;  // size 2^m, indexed by bit pattern
};

inline const Constellation& constellation(Modulation mod) {
    static const Constellation qpsk = [] {
        Constellation c{Modulation::Qpsk, 2, {}};
        c.points.resize(4);
        for (int idx = 0; idx < 4; ++idx) {
            const int b0 = (idx >> 1) & 1, b1 = idx & 1;
            c.points[static_cast<size_t>(idx)] = {(1 - 2 * b0) * 0.5, (1 - 2 * b1) * 0.5};
        }
        return c;
    }();
    static const Constellation qam16 = [] {
        Constellation c{Modulation::Qam16, 4, {}};
        c.points.resize(16);
        const double s = 1.0 / std::sqrt(20.0);
        auto level = [](int sign_bit, int mag_bit) { return (1 - 2 * sign_bit) * (3 - 2 * mag_bit); };
        for (int idx = 0; idx < 16; ++idx) {
            const int b0 = (idx >> 3) & 1, b1 = (idx >> 2) & 1;
            const int b2 = (idx >> 1) & 1, b3 = idx & 1;
            c.points[static_cast<size_t>(idx)] = {level(b0, b1) * s, level(b2, b3) * s};
        }
        return c;
    }();
    return mod == Modulation::Qpsk ? qpsk : qam16;
}

/// One block of transmit vectors x_l = (x_1l, x_2l).
struct SymbolFrame {
    std::vector<std::array<cxd, 2>> x;

    int length() const { return static_cast<int>(x.size()); }
};

/// Demux coded bits round-robin by symbol: per time index the first m bits go
/// to antenna 1, the next m to antenna 2.
inline SymbolFrame map_symbols(const BitBuffer& coded, Modulation mod) {
    const Constellation& c = constellation(mod);
    const int m = c.m;
    if (coded.size() % static_cast<size_t>(2 * m) != 0)
        throw std::invalid_argument("map_symbols: length not divisible by Nt*m");
    SymbolFrame frame;
    frame.x.resize(coded.size() / static_cast<size_t>(2 * m));
    size_t pos = 0;
    for (auto& xl : frame.x) {
        for (int ant = 0; ant < 2; ++ant) {
            int idx = 0;
            for (int k = 0; k < m; ++k) idx = (idx << 1) | coded[pos++];
            xl[static_cast<size_t>(ant)] = c.points[static_cast<size_t>(idx)];
        }
    }
    return frame;
}

/// Bit k of the candidate pair (i1, i2): bits 0..m-1 belong to antenna 1.
inline int candidate_bit(int i1, int i2, int m, int k) {
    return k < m ? (i1 >> (m - 1 - k)) & 1 : (i2 >> (2 * m - 1 - k)) & 1;
}

}  // namespace vmimo
