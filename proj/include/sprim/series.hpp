#pragma once

#include <vector>

#include "sprim/config.hpp"

namespace sprim {

/// Power series sum coeffs[k] (z - base)^k truncated to order() terms.
template <typename Scalar>
class Series {
   public:
    using Coeffs = std::vector<Scalar>;

    Series(Scalar base, Coeffs coeffs) : base_(base), coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw Error(ErrorKind::DegenerateInput, "series needs at least one term");
    }
    /// 1 + 0 z + ... with `order` terms.
    static Series one(int order, Scalar base = Scalar(0)) {
        Coeffs c(static_cast<std::size_t>(order), Scalar(0));
        c.at(0) = Scalar(1);
        return Series(base, std::move(c));
    }

    Scalar base() const { return base_; }
    int order() const { return static_cast<int>(coeffs_.size()); }
    const Coeffs& coeffs() const { return coeffs_; }
    Scalar operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Scalar(0); }

    Scalar operator()(Scalar z) const {
        const Scalar t = z - base_;
        Scalar acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    friend Series operator*(const Series& x, const Series& y) {
        const std::size_t n = std::min(x.coeffs_.size(), y.coeffs_.size());
        Coeffs out(n, Scalar(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) out[i + j] += x.coeffs_[i] * y.coeffs_[j];
        return Series(x.base_, std::move(out));
    }

   private:
    Scalar base_;
    Coeffs coeffs_;
};

using TruncatedSeries = Series<Complex>;

/// 1/s; needs s[0] != 0.
template <typename Scalar>
Series<Scalar> reciprocal(const Series<Scalar>& s) {
    if (s[0] == Scalar(0)) throw Error(ErrorKind::DegenerateInput, "series reciprocal needs a nonzero constant term");
    const std::size_t n = static_cast<std::size_t>(s.order());
    typename Series<Scalar>::Coeffs out(n, Scalar(0));
    out[0] = Scalar(1) / s[0];
    for (std::size_t k = 1; k < n; ++k) {
        Scalar acc(0);
        for (std::size_t j = 1; j <= k; ++j) acc += s[j] * out[k - j];
        out[k] = -acc / s[0];
    }
    return Series<Scalar>(s.base(), std::move(out));
}

/// Term-by-term derivative; the result has one term fewer (at least one).
template <typename Scalar>
Series<Scalar> derivative(const Series<Scalar>& s) {
    typename Series<Scalar>::Coeffs out;
    for (std::size_t k = 1; k < static_cast<std::size_t>(s.order()); ++k)
        out.push_back(s[k] * static_cast<RealOf_t<Scalar>>(k));
    if (out.empty()) out.push_back(Scalar(0));
    return Series<Scalar>(s.base(), std::move(out));
}

/// Antiderivative vanishing at the base point; one term longer.
template <typename Scalar>
Series<Scalar> integral(const Series<Scalar>& s) {
    typename Series<Scalar>::Coeffs out{Scalar(0)};
    for (std::size_t k = 0; k < static_cast<std::size_t>(s.order()); ++k)
        out.push_back(s[k] / static_cast<RealOf_t<Scalar>>(k + 1));
    return Series<Scalar>(s.base(), std::move(out));
}

/// Quotient of two series given by coefficient lists, to n terms.
template <typename Scalar>
std::vector<Scalar> series_divide(const std::vector<Scalar>& num, const std::vector<Scalar>& den, std::size_t n) {
    if (den.empty() || den[0] == Scalar(0))
        throw Error(ErrorKind::DegenerateInput, "series division needs a nonzero constant term");
    std::vector<Scalar> out(n, Scalar(0));
    for (std::size_t k = 0; k < n; ++k) {
        Scalar acc = k < num.size() ? num[k] : Scalar(0);
        for (std::size_t j = 1; j <= k && j < den.size(); ++j) acc -= den[j] * out[k - j];
        out[k] = acc / den[0];
    }
    return out;
}

}  // namespace sprim
