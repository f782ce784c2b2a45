#include "emlab/grid_sampler.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "emlab/numeric.hpp"
#include "emlab/parallel.hpp"

namespace emlab {

namespace {

constexpr std::int64_t kChunk = 1 << 14;  // 16k doubles of scratch per factor pass
constexpr int kLanes = 8;                 // independent rotation lanes (vectorizable)

// cos(pi * ((2m+1)h mod 2n) / n) for m in [begin, end), written to out.
// Lane seeds use exact 128-bit modular phase; within a chunk each lane takes
// at most (end-begin)/kLanes rotation steps, keeping drift ~1e-13.
void fill_cosines(std::int64_t h, std::int64_t n, std::int64_t begin, std::int64_t end,
                  double* out) {
    const std::int64_t len = end - begin;
    const auto two_n = static_cast<unsigned __int128>(2 * n);
    auto angle_at = [&](std::int64_t m) {
        const auto num = static_cast<unsigned __int128>(2 * m + 1) *
                         static_cast<unsigned __int128>(h);
        const auto ph = static_cast<std::uint64_t>(num % two_n);
        return std::numbers::pi * static_cast<double>(ph) / static_cast<double>(n);
    };
    // Rotation step for a stride of kLanes points: angle advance 2*pi*h*kLanes/n,
    // reduced exactly mod 2*pi via the same integer arithmetic.
    const auto step_num = static_cast<unsigned __int128>(2 * kLanes) *
                          static_cast<unsigned __int128>(h);
    const auto step_ph = static_cast<std::uint64_t>(step_num % two_n);
    const double step = std::numbers::pi * static_cast<double>(step_ph) / static_cast<double>(n);
    const double cs = std::cos(step), sn = std::sin(step);

    double c[kLanes], s[kLanes];
    const int lanes = len < kLanes ? static_cast<int>(len) : kLanes;
    for (int l = 0; l < lanes; ++l) {
        const double a = angle_at(begin + l);
        c[l] = std::cos(a);
        s[l] = std::sin(a);
    }
    std::int64_t t = 0;
    for (; t + kLanes <= len; t += kLanes) {
        for (int l = 0; l < kLanes; ++l) out[t + l] = c[l];
        for (int l = 0; l < kLanes; ++l) {
            const double cn = c[l] * cs - s[l] * sn;
            const double sx = s[l] * cs + c[l] * sn;
            c[l] = cn;
            s[l] = sx;
        }
    }
    for (; t < len; ++t) out[t] = std::cos(angle_at(begin + t));
}

}  // namespace

CosineProductGrid::CosineProductGrid(std::vector<std::int64_t> freqs, std::vector<double> amps,
                                     std::int64_t n_points)
    : freqs_(std::move(freqs)), amps_(std::move(amps)), n_(n_points) {
    if (freqs_.size() != amps_.size()) {
        throw std::invalid_argument("CosineProductGrid: frequency/amplitude length mismatch");
    }
    if (n_ < 1) throw std::invalid_argument("CosineProductGrid: need at least one point");
    for (std::int64_t h : freqs_) {
        if (h < 1) throw std::invalid_argument("CosineProductGrid: frequencies must be positive");
    }
}

void CosineProductGrid::fill(std::int64_t begin, std::int64_t end, double* out) const {
    const std::int64_t len = end - begin;
    if (len <= 0) return;
    thread_local std::vector<double> scratch;
    for (std::int64_t c0 = begin; c0 < end; c0 += kChunk) {
        const std::int64_t c1 = c0 + kChunk < end ? c0 + kChunk : end;
        const std::int64_t clen = c1 - c0;
        double* dst = out + (c0 - begin);
        for (std::int64_t t = 0; t < clen; ++t) dst[t] = 1.0;
        if (scratch.size() < static_cast<std::size_t>(clen)) {
            scratch.resize(static_cast<std::size_t>(clen));
        }
        for (std::size_t f = 0; f < freqs_.size(); ++f) {
            fill_cosines(freqs_[f], n_, c0, c1, scratch.data());
            const double a = amps_[f];
            for (std::int64_t t = 0; t < clen; ++t) {
                dst[t] *= 1.0 + a * scratch[t];
            }
        }
    }
}

CosineProductGrid::Moments CosineProductGrid::moments(double p) const {
    const bool want_pow = p > 0.0;
    const std::size_t nchunks = chunk_count(n_, kChunk);
    std::vector<KahanSum> sums(nchunks), sums_sq(nchunks), sums_pow(nchunks);
    for_each_chunk(n_, kChunk, [&](std::size_t c, std::int64_t b, std::int64_t e) {
        thread_local std::vector<double> buf;
        const std::int64_t len = e - b;
        if (buf.size() < static_cast<std::size_t>(len)) buf.resize(static_cast<std::size_t>(len));
        fill(b, e, buf.data());
        KahanSum s, sq, sp;
        for (std::int64_t t = 0; t < len; ++t) {
            const double v = buf[static_cast<std::size_t>(t)];
            s.add(v);
            sq.add(v * v);
            if (want_pow) sp.add(std::pow(std::fabs(v), p));
        }
        sums[c] = s;
        sums_sq[c] = sq;
        sums_pow[c] = sp;
    });
    KahanSum total, total_sq, total_pow;
    for (std::size_t c = 0; c < nchunks; ++c) {
        total.merge(sums[c]);
        total_sq.merge(sums_sq[c]);
        total_pow.merge(sums_pow[c]);
    }
    const double inv_n = 1.0 / static_cast<double>(n_);
    Moments m;
    m.mean = total.value() * inv_n;
    m.mean_sq = total_sq.value() * inv_n;
    m.mean_pow = want_pow ? total_pow.value() * inv_n : 0.0;
    return m;
}

std::vector<double> CosineProductGrid::values() const {
    std::vector<double> out(static_cast<std::size_t>(n_));
    for_each_chunk(n_, kChunk, [&](std::size_t, std::int64_t b, std::int64_t e) {
        fill(b, e, out.data() + b);
    });
    return out;
}

}  // namespace emlab
