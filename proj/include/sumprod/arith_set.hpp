#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "sumprod/error.hpp"
#include "sumprod/field.hpp"

namespace sumprod {

/// Finite set of field elements stored sorted and duplicate-free.
///
/// The canonical order is numeric order for rationals and residue order for
/// F_p. Every iteration in the library walks this order, which makes all
/// derived counts and witnesses deterministic.
template <FieldValue F>
class ArithSet {
public:
    using value_type = F;
    using Context = typename F::Context;
    using const_iterator = typename std::vector<F>::const_iterator;

    ArithSet() = default;
    explicit ArithSet(Context ctx) : ctx_(ctx) {}

    ArithSet(std::vector<F> elements, Context ctx) : ctx_(ctx), elems_(std::move(elements)) {
        for (const F& e : elems_) {
            if (!(e.context() == ctx_)) throw ModeMismatch("set element from a different field");
        }
        canonicalize();
    }

    // The field is taken from the first element (the default field if empty).
    explicit ArithSet(std::vector<F> elements) : ArithSet(adopt_context(std::move(elements))) {}

    // Convenience for integer literals, e.g. ArithSet<Rational>{1, 2, 4}.
    ArithSet(std::initializer_list<long long> values) {
        elems_.reserve(values.size());
        for (long long v : values) elems_.push_back(F::from_integer(v, ctx_));
        canonicalize();
    }

    static ArithSet from_integers(std::span<const long long> values, Context ctx) {
        std::vector<F> out;
        out.reserve(values.size());
        for (long long v : values) out.push_back(F::from_integer(v, ctx));
        return ArithSet(std::move(out), ctx);
    }

    // Takes ownership of already sorted, deduplicated data.
    static ArithSet from_sorted_unique(std::vector<F> elements, Context ctx) {
        ArithSet s(ctx);
        s.elems_ = std::move(elements);
        return s;
    }

    Context context() const { return ctx_; }
    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const_iterator begin() const noexcept { return elems_.begin(); }
    const_iterator end() const noexcept { return elems_.end(); }
    const F& operator[](std::size_t i) const { return elems_[i]; }
    const F& front() const { return elems_.front(); }
    const F& back() const { return elems_.back(); }
    std::span<const F> elements() const noexcept { return elems_; }

    bool contains(const F& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

    /// Position of x in canonical order, or size() when absent.
    std::size_t index_of(const F& x) const {
        auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
        return (it != elems_.end() && *it == x) ? static_cast<std::size_t>(it - elems_.begin()) : elems_.size();
    }

    bool contains_zero() const {
        return std::any_of(elems_.begin(), elems_.end(), [](const F& e) { return e.is_zero(); });
    }

    bool is_subset_of(const ArithSet& other) const {
        check_same_field(other);
        return std::includes(other.elems_.begin(), other.elems_.end(), elems_.begin(), elems_.end());
    }

    void check_same_field(const ArithSet& other) const {
        if (!(ctx_ == other.ctx_)) throw ModeMismatch("sets over different fields");
    }

    friend bool operator==(const ArithSet& a, const ArithSet& b) {
        return a.ctx_ == b.ctx_ && a.elems_ == b.elems_;
    }

    std::string str() const {
        std::string out = "{";
        for (std::size_t i = 0; i < elems_.size(); ++i) {
            if (i) out += ", ";
            out += elems_[i].str();
        }
        return out + "}";
    }

private:
    static ArithSet adopt_context(std::vector<F> elements) {
        const Context ctx = elements.empty() ? Context{} : Context(elements.front().context());
        return ArithSet(std::move(elements), ctx);
    }

    void canonicalize() {
        std::sort(elems_.begin(), elems_.end());
        elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    }

    Context ctx_{};
    std::vector<F> elems_;
};

using RationalSet = ArithSet<Rational>;
using ResidueSet = ArithSet<Residue>;

}  // namespace sumprod
