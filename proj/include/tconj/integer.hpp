// Arbitrary-precision signed integers. Sign-magnitude representation on
// 32-bit limbs (little-endian), schoolbook multiplication and Knuth
// algorithm D division. Values in this project stay a few hundred bits
// wide, so asymptotics beyond O(n^2) are not worth their complexity here.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tconj/error.hpp"

namespace tconj {

class Integer {
public:
    Integer() = default;

    Integer(long long v) { // NOLINT: implicit by design, mirrors built-in ints
        if (v == 0) return;
        sign_ = v < 0 ? -1 : 1;
        // avoid UB on LLONG_MIN
        unsigned long long m = v < 0 ? ~static_cast<unsigned long long>(v) + 1ULL
                                     : static_cast<unsigned long long>(v);
        while (m != 0) {
            mag_.push_back(static_cast<uint32_t>(m & 0xffffffffULL));
            m >>= 32;
        }
    }

    static Integer parse(std::string_view s) {
        size_t i = 0;
        int sign = 1;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        if (i == s.size()) raise(errc::parse_error, "empty integer literal");
        Integer out;
        const Integer chunk_base(1000000000LL);
        uint32_t chunk = 0;
        int chunk_len = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9')
                raise(errc::parse_error, "bad digit in integer literal '" + std::string(s) + "'");
            chunk = chunk * 10 + static_cast<uint32_t>(s[i] - '0');
            if (++chunk_len == 9) {
                out = out * chunk_base + Integer(static_cast<long long>(chunk));
                chunk = 0;
                chunk_len = 0;
            }
        }
        if (chunk_len > 0) {
            long long pow10 = 1;
            for (int k = 0; k < chunk_len; ++k) pow10 *= 10;
            out = out * Integer(pow10) + Integer(static_cast<long long>(chunk));
        }
        if (sign < 0) out = -out;
        return out;
    }

    bool is_zero() const { return sign_ == 0; }
    bool is_one() const { return sign_ == 1 && mag_.size() == 1 && mag_[0] == 1; }
    bool is_negative() const { return sign_ < 0; }
    int sgn() const { return sign_; }

    Integer abs() const {
        Integer r = *this;
        if (r.sign_ < 0) r.sign_ = 1;
        return r;
    }

    friend Integer operator-(const Integer& a) {
        Integer r = a;
        r.sign_ = -r.sign_;
        return r;
    }

    friend Integer operator+(const Integer& a, const Integer& b) {
        if (a.sign_ == 0) return b;
        if (b.sign_ == 0) return a;
        Integer r;
        if (a.sign_ == b.sign_) {
            r.mag_ = add_mag(a.mag_, b.mag_);
            r.sign_ = a.sign_;
        } else {
            int c = cmp_mag(a.mag_, b.mag_);
            if (c == 0) return Integer();
            if (c > 0) {
                r.mag_ = sub_mag(a.mag_, b.mag_);
                r.sign_ = a.sign_;
            } else {
                r.mag_ = sub_mag(b.mag_, a.mag_);
                r.sign_ = b.sign_;
            }
        }
        return r;
    }

    friend Integer operator-(const Integer& a, const Integer& b) { return a + (-b); }

    friend Integer operator*(const Integer& a, const Integer& b) {
        if (a.sign_ == 0 || b.sign_ == 0) return Integer();
        Integer r;
        r.mag_ = mul_mag(a.mag_, b.mag_);
        r.sign_ = a.sign_ * b.sign_;
        return r;
    }

    Integer& operator+=(const Integer& o) { return *this = *this + o; }
    Integer& operator-=(const Integer& o) { return *this = *this - o; }
    Integer& operator*=(const Integer& o) { return *this = *this * o; }

    // Truncated division: quotient rounds toward zero, remainder carries the
    // sign of the dividend and satisfies a == q*b + r with |r| < |b|.
    static std::pair<Integer, Integer> divmod(const Integer& a, const Integer& b) {
        if (b.sign_ == 0) raise(errc::domain_error, "integer division by zero");
        if (a.sign_ == 0) return {Integer(), Integer()};
        auto [qm, rm] = divmod_mag(a.mag_, b.mag_);
        Integer q, r;
        q.mag_ = std::move(qm);
        r.mag_ = std::move(rm);
        q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
        r.sign_ = r.mag_.empty() ? 0 : a.sign_;
        return {q, r};
    }

    friend Integer operator/(const Integer& a, const Integer& b) { return divmod(a, b).first; }
    friend Integer operator%(const Integer& a, const Integer& b) { return divmod(a, b).second; }

    static int cmp(const Integer& a, const Integer& b) {
        if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
        int c = cmp_mag(a.mag_, b.mag_);
        return a.sign_ >= 0 ? c : -c;
    }

    friend bool operator==(const Integer& a, const Integer& b) { return cmp(a, b) == 0; }
    friend bool operator!=(const Integer& a, const Integer& b) { return cmp(a, b) != 0; }
    friend bool operator<(const Integer& a, const Integer& b) { return cmp(a, b) < 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return cmp(a, b) <= 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return cmp(a, b) > 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return cmp(a, b) >= 0; }

    static Integer pow(const Integer& base, unsigned long long e) {
        Integer acc(1), sq = base;
        while (e != 0) {
            if (e & 1ULL) acc *= sq;
            e >>= 1;
            if (e != 0) sq *= sq;
        }
        return acc;
    }

    // Exact conversion; throws when the value does not fit.
    long long to_ll() const {
        unsigned long long m = 0;
        if (mag_.size() > 2) raise(errc::domain_error, "integer too large for int64");
        for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
        if (sign_ >= 0) {
            if (m > 0x7fffffffffffffffULL) raise(errc::domain_error, "integer too large for int64");
            return static_cast<long long>(m);
        }
        if (m > 0x8000000000000000ULL) raise(errc::domain_error, "integer too large for int64");
        return static_cast<long long>(~m + 1ULL);
    }

    bool fits_ll() const {
        if (mag_.size() > 2) return false;
        unsigned long long m = 0;
        for (size_t i = mag_.size(); i-- > 0;) m = (m << 32) | mag_[i];
        return sign_ >= 0 ? m <= 0x7fffffffffffffffULL : m <= 0x8000000000000000ULL;
    }

    std::string str() const {
        if (sign_ == 0) return "0";
        std::string out;
        std::vector<uint32_t> m = mag_;
        while (!m.empty()) {
            // divide magnitude by 10^9, collecting the remainder
            uint64_t rem = 0;
            for (size_t i = m.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | m[i];
                m[i] = static_cast<uint32_t>(cur / 1000000000ULL);
                rem = cur % 1000000000ULL;
            }
            while (!m.empty() && m.back() == 0) m.pop_back();
            std::string chunk = std::to_string(rem);
            if (!m.empty())
                chunk.insert(0, 9 - chunk.size(), '0');
            out.insert(0, chunk);
        }
        if (sign_ < 0) out.insert(0, 1, '-');
        return out;
    }

    size_t bit_width() const {
        if (mag_.empty()) return 0;
        uint32_t top = mag_.back();
        size_t bits = (mag_.size() - 1) * 32;
        while (top != 0) {
            ++bits;
            top >>= 1;
        }
        return bits;
    }

private:
    using Mag = std::vector<uint32_t>;

    static void trim(Mag& m) {
        while (!m.empty() && m.back() == 0) m.pop_back();
    }

    static int cmp_mag(const Mag& a, const Mag& b) {
        if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
        for (size_t i = a.size(); i-- > 0;)
            if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
    }

    static Mag add_mag(const Mag& a, const Mag& b) {
        const Mag& lo = a.size() < b.size() ? a : b;
        const Mag& hi = a.size() < b.size() ? b : a;
        Mag r(hi.size() + 1, 0);
        uint64_t carry = 0;
        for (size_t i = 0; i < hi.size(); ++i) {
            uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
            r[i] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        r[hi.size()] = static_cast<uint32_t>(carry);
        trim(r);
        return r;
    }

    // requires a >= b
    static Mag sub_mag(const Mag& a, const Mag& b) {
        Mag r(a.size(), 0);
        int64_t borrow = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
            if (s < 0) {
                s += (1LL << 32);
                borrow = 1;
            } else {
                borrow = 0;
            }
            r[i] = static_cast<uint32_t>(s);
        }
        trim(r);
        return r;
    }

    static Mag mul_mag(const Mag& a, const Mag& b) {
        Mag r(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            uint64_t carry = 0;
            uint64_t ai = a[i];
            for (size_t j = 0; j < b.size(); ++j) {
                uint64_t cur = r[i + j] + ai * b[j] + carry;
                r[i + j] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
            }
            size_t k = i + b.size();
            while (carry != 0) {
                uint64_t cur = r[k] + carry;
                r[k] = static_cast<uint32_t>(cur);
                carry = cur >> 32;
                ++k;
            }
        }
        trim(r);
        return r;
    }

    static Mag shl_bits(const Mag& a, unsigned s) {
        if (s == 0) return a;
        Mag r(a.size() + 1, 0);
        uint32_t carry = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            r[i] = (a[i] << s) | carry;
            carry = static_cast<uint32_t>(static_cast<uint64_t>(a[i]) >> (32 - s));
        }
        r[a.size()] = carry;
        trim(r);
        return r;
    }

    static Mag shr_bits(const Mag& a, unsigned s) {
        if (s == 0) return a;
        Mag r(a.size(), 0);
        uint32_t carry = 0;
        for (size_t i = a.size(); i-- > 0;) {
            r[i] = (a[i] >> s) | carry;
            carry = static_cast<uint32_t>(static_cast<uint64_t>(a[i]) << (32 - s));
        }
        trim(r);
        return r;
    }

    // Knuth TAOCP vol.2 algorithm D. Returns (quotient, remainder).
    static std::pair<Mag, Mag> divmod_mag(const Mag& u_in, const Mag& v_in) {
        if (cmp_mag(u_in, v_in) < 0) return {Mag{}, u_in};
        if (v_in.size() == 1) {
            Mag q(u_in.size(), 0);
            uint64_t rem = 0, d = v_in[0];
            for (size_t i = u_in.size(); i-- > 0;) {
                uint64_t cur = (rem << 32) | u_in[i];
                q[i] = static_cast<uint32_t>(cur / d);
                rem = cur % d;
            }
            trim(q);
            Mag r;
            if (rem != 0) r.push_back(static_cast<uint32_t>(rem));
            return {q, r};
        }

        unsigned shift = 0;
        for (uint32_t top = v_in.back(); (top & 0x80000000U) == 0; top <<= 1) ++shift;
        Mag v = shl_bits(v_in, shift);
        Mag u = shl_bits(u_in, shift);
        const size_t n = v.size();
        const size_t m = u.size() >= n ? u.size() - n : 0;
        u.resize(u_in.size() + 1 + (shift ? 1 : 0), 0); // ensure u[m+n] exists
        if (u.size() < m + n + 1) u.resize(m + n + 1, 0);

        Mag q(m + 1, 0);
        const uint64_t base = 1ULL << 32;
        for (size_t j = m + 1; j-- > 0;) {
            uint64_t top2 = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
            uint64_t qhat = top2 / v[n - 1];
            uint64_t rhat = top2 % v[n - 1];
            while (qhat >= base ||
                   qhat * v[n - 2] > ((rhat << 32) | u[j + n - 2])) {
                --qhat;
                rhat += v[n - 1];
                if (rhat >= base) break;
            }
            // multiply-subtract u[j..j+n] -= qhat * v
            int64_t borrow = 0;
            uint64_t carry = 0;
            for (size_t i = 0; i < n; ++i) {
                uint64_t p = qhat * v[i] + carry;
                carry = p >> 32;
                int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffULL) - borrow;
                if (t < 0) {
                    t += static_cast<int64_t>(base);
                    borrow = 1;
                } else {
                    borrow = 0;
                }
                u[i + j] = static_cast<uint32_t>(t);
            }
            int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
            if (t < 0) {
                // qhat was one too large: add v back
                t += static_cast<int64_t>(base);
                --qhat;
                uint64_t c2 = 0;
                for (size_t i = 0; i < n; ++i) {
                    uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
                    u[i + j] = static_cast<uint32_t>(s);
                    c2 = s >> 32;
                }
                t += static_cast<int64_t>(c2);
                t &= static_cast<int64_t>(base) - 1;
            }
            u[j + n] = static_cast<uint32_t>(t);
            q[j] = static_cast<uint32_t>(qhat);
        }
        trim(q);
        Mag r(u.begin(), u.begin() + static_cast<long>(n));
        trim(r);
        r = shr_bits(r, shift);
        return {q, r};
    }

    int sign_ = 0;
    Mag mag_;
};

} // namespace tconj
