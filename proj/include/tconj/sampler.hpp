// Distinct-image element sampler. Given a polynomial f of degree >= 1 over
// an integral domain and a stream of pairwise-distinct elements, pulls
// elements until `count` of them have pairwise-distinct f-images. Since an
// image value has at most deg(f) preimages, scanning (count-1)*deg(f)+1
// distinct inputs always suffices; that bound is the default budget.
#pragma once

#include <cstdint>
#include <vector>

#include "tconj/error.hpp"
#include "tconj/polynomial.hpp"
#include "tconj/rings.hpp"

namespace tconj {

template <Ring R>
struct SampledElements {
    std::vector<typename R::Element> elements;
    std::vector<typename R::Element> images;
    uint64_t scanned = 0;
};

template <Ring R>
uint64_t sampler_scan_bound(long degree, uint64_t count) {
    return (count - 1) * static_cast<uint64_t>(degree) + 1;
}

template <Ring R>
SampledElements<R> distinct_image_sampler(const R& ring, const UniPoly<R>& f,
                                          const ElementStream<R>& source, uint64_t count,
                                          uint64_t scan_budget = 0) {
    long deg = poly_degree(ring, f);
    if (deg < 1)
        raise(errc::non_separating_polynomial,
              "polynomial of degree " + std::to_string(deg) + " cannot separate images");
    if (count == 0) return {};
    if (scan_budget == 0) scan_budget = sampler_scan_bound<R>(deg, count);

    SampledElements<R> out;
    out.elements.reserve(count);
    out.images.reserve(count);
    for (uint64_t i = 0;; ++i) {
        if (out.scanned >= scan_budget)
            raise(errc::budget_exhausted,
                  "scanned " + std::to_string(out.scanned) + " elements without finding " +
                      std::to_string(count) + " distinct images");
        auto x = source(i);
        if (!x)
            raise(errc::budget_exhausted, "element stream exhausted after " +
                                              std::to_string(out.scanned) + " elements");
        ++out.scanned;
        auto y = poly_eval(ring, f, *x);
        bool fresh = true;
        for (const auto& seen : out.images)
            if (ring.equal(seen, y)) {
                fresh = false;
                break;
            }
        if (!fresh) continue;
        out.elements.push_back(*x);
        out.images.push_back(y);
        if (out.elements.size() == count) return out;
    }
}

} // namespace tconj
