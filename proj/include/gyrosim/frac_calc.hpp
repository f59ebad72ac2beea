#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gyrosim/vec2.hpp"

namespace gyrosim {

/**
 * Grünwald–Letnikov binomial weights for the fractional operator D^order.
 *
 * w_0 = 1 and w_k = w_{k-1} * (1 - (order+1)/k), which equals
 * (-1)^k * C(order, k). Negative order gives a fractional integral.
 * For order 0 the weights reduce to the identity; for a positive integer
 * order n they terminate after k = n and the operator degenerates to the
 * classical n-th backward difference.
 */
struct GLWeights {
    double order = 0.0;
    std::vector<double> weights;
    // weights reversed (weights_rev[i] = weights[len-1-i]); lets the
    // convolution against a chronological sample buffer run as a
    // forward-forward dot product.
    std::vector<double> weights_rev;

    std::size_t memory_len() const { return weights.size(); }
};

inline GLWeights gl_weights(double order, std::size_t len) {
    if (len == 0)
        throw std::invalid_argument("gl_weights: len must be >= 1");
    GLWeights w;
    w.order = order;
    w.weights.resize(len);
    w.weights[0] = 1.0;
    for (std::size_t k = 1; k < len; ++k)
        w.weights[k] = w.weights[k - 1] * (1.0 - (order + 1.0) / static_cast<double>(k));
    w.weights_rev.assign(w.weights.rbegin(), w.weights.rend());
    return w;
}

namespace detail {

/// dot(a[0..n), b[0..n)) with sixteen independent accumulators. The
/// summation order is fixed and deterministic; the split keeps several
/// vector FMA chains in flight instead of one latency-bound chain.
inline double dot_unrolled(const double* a, const double* b, std::size_t n) {
    double acc[16] = {0.0};
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        for (std::size_t j = 0; j < 16; ++j)
            acc[j] += a[i + j] * b[i + j];
    }
    for (std::size_t j = 0; i < n; ++i, ++j)
        acc[j & 15u] += a[i] * b[i];
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        s0 += acc[j];
        s1 += acc[4 + j];
        s2 += acc[8 + j];
        s3 += acc[12 + j];
    }
    return (s0 + s1) + (s2 + s3);
}

}  // namespace detail

/**
 * Uniformly sampled scalar signal history, most recent sample last.
 *
 * sample(k) is f(t - k*dt) counting back from the newest sample. Values
 * from before recording began are treated as zero, so the GL sum sees the
 * signal as switched on at the first push. A bounded capacity turns the
 * buffer into a FIFO (short-memory truncation); the default keeps
 * everything.
 */
class SampledHistory {
public:
    explicit SampledHistory(double dt,
                            std::size_t capacity = static_cast<std::size_t>(-1))
        : dt_(dt), capacity_(capacity) {
        if (!(dt > 0.0))
            throw std::invalid_argument("SampledHistory: dt must be > 0");
        if (capacity == 0)
            throw std::invalid_argument("SampledHistory: capacity must be >= 1");
    }

    void push(double value) {
        if (data_.size() == capacity_) {
            // FIFO drop of the oldest sample; start_ walks the ring.
            data_[start_] = value;
            start_ = (start_ + 1) % capacity_;
        } else {
            data_.push_back(value);
        }
    }

    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }
    double dt() const { return dt_; }
    std::size_t capacity() const { return capacity_; }

    /// k-th sample counting back from the newest (k = 0 is f(t)).
    double sample(std::size_t k) const {
        const std::size_t n = data_.size();
        return data_[(start_ + n - 1 - k) % n];
    }

    void clear() {
        data_.clear();
        start_ = 0;
    }

private:
    double dt_;
    std::size_t capacity_;
    std::size_t start_ = 0;  // index of the oldest sample once the ring wrapped
    std::vector<double> data_;

    friend double differint(const SampledHistory&, const GLWeights&);
    friend Vec2 differint2(const SampledHistory&, const SampledHistory&,
                           const GLWeights&);
};

/**
 * GL differintegral of the history head: dt^(-order) * sum_k w_k * f(t - k dt).
 * The sum runs over min(memory_len, available samples); missing pre-history
 * contributes zero by construction.
 */
inline double differint(const SampledHistory& hist, const GLWeights& w) {
    if (hist.empty())
        throw std::invalid_argument("differint: empty history");
    const std::size_t n = hist.size();
    const std::size_t L = w.memory_len();
    const std::size_t terms = std::min(n, L);
    double acc;
    if (hist.start_ == 0) {
        // Contiguous chronological layout: sum_k w_k f_(n-1-k) equals a
        // forward dot of the newest `terms` samples against the tail of the
        // reversed weights.
        const double* data = hist.data_.data() + (n - terms);
        const double* wr = w.weights_rev.data() + (L - terms);
        acc = detail::dot_unrolled(data, wr, terms);
    } else {
        acc = 0.0;
        for (std::size_t k = terms; k-- > 0;)
            acc += w.weights[k] * hist.sample(k);
    }
    return acc * std::pow(hist.dt(), -w.order);
}

/// differint applied to a pair of per-axis histories sharing one dt.
inline Vec2 differint2(const SampledHistory& hx, const SampledHistory& hy,
                       const GLWeights& w) {
    return {differint(hx, w), differint(hy, w)};
}

/// Signed fractional power sign(x)*|x|^p: the real-valued convention for
/// e^(r/m) on negative errors. Odd in x, zero at zero.
inline double signed_pow(double x, double p) {
    if (!(p > 0.0))
        throw std::invalid_argument("signed_pow: exponent must be > 0");
    if (x == 0.0)
        return 0.0;
    return sgn(x) * std::pow(std::abs(x), p);
}

inline Vec2 signed_pow(Vec2 v, double p) {
    return {signed_pow(v.x, p), signed_pow(v.y, p)};
}

}  // namespace gyrosim
