#pragma once

#include <map>
#include <string>
#include <vector>

#include "ellischub/rational.hpp"

namespace ellsc {

// Variable names used across the library:
//   z1, z2, ...    torus characters (multiplicative)
//   mu1, mu2, ...  dynamical / Kaehler parameters
//   g1, g2, ...    gamma variables of modified weight functions
//   t<k>_<a>       free weight-function variables, level k slot a
//   h              the Planck parameter (h = 1/y in degenerations)
//   y              used only by the K-theory degeneration checks
// plus ad-hoc auxiliary names in tests.
inline std::string zname(int i) { return "z" + std::to_string(i); }
inline std::string muname(int i) { return "mu" + std::to_string(i); }
inline std::string gname(int i) { return "g" + std::to_string(i); }
inline std::string tname(int level, int slot) {
    return "t" + std::to_string(level) + "_" + std::to_string(slot);
}

// Laurent monomial in named variables with exponents in (1/2)Z.
// Exponents are stored doubled so that everything stays integral;
// an exponent entry of 2 means the variable appears to the first power.
class Monomial {
  public:
    Monomial() = default;

    static Monomial var(const std::string& name, int doubled = 2) {
        Monomial m;
        if (doubled != 0) m.e_[name] = doubled;
        return m;
    }

    bool trivial() const { return e_.empty(); }

    int doubled_exponent(const std::string& name) const {
        auto it = e_.find(name);
        return it == e_.end() ? 0 : it->second;
    }

    const std::map<std::string, int>& exponents() const { return e_; }

    Monomial& mul_var(const std::string& name, int doubled) {
        if (doubled == 0) return *this;
        int& slot = e_[name];
        slot += doubled;
        if (slot == 0) e_.erase(name);
        return *this;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (const auto& [v, d] : o.e_) r.mul_var(v, d);
        return r;
    }

    Monomial inverse() const {
        Monomial r;
        for (const auto& [v, d] : e_) r.e_[v] = -d;
        return r;
    }

    Monomial operator/(const Monomial& o) const { return *this * o.inverse(); }

    Monomial pow(int k) const {
        Monomial r;
        if (k == 0) return r;
        for (const auto& [v, d] : e_) r.e_[v] = d * k;
        return r;
    }

    // Simultaneous substitution of whole variables by monomials.
    // Variables absent from the map are kept.
    Monomial subst(const std::map<std::string, Monomial>& table) const {
        Monomial r;
        for (const auto& [v, d] : e_) {
            auto it = table.find(v);
            if (it == table.end()) {
                r.mul_var(v, d);
            } else {
                for (const auto& [w, dw] : it->second.exponents()) {
                    // exponent of the replacement is dw/2 in semantic units;
                    // doubled result = d * dw / 2, integral whenever either
                    // factor is even.  Half-integer times half-integer would
                    // leave the (1/2)Z lattice.
                    long prod = static_cast<long>(d) * dw;
                    if (prod % 2 != 0)
                        throw LatticeViolation("substitution leaves half-integer lattice: " + v +
                                               " -> " + w);
                    r.mul_var(w, static_cast<int>(prod / 2));
                }
            }
        }
        return r;
    }

    // Variable renaming (a special case of subst, kept cheap).
    Monomial rename(const std::map<std::string, std::string>& table) const {
        Monomial r;
        for (const auto& [v, d] : e_) {
            auto it = table.find(v);
            r.mul_var(it == table.end() ? v : it->second, d);
        }
        return r;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator<(const Monomial& o) const { return e_ < o.e_; }

    // Human-readable form like "z1 z2^-1 h^1/2".
    std::string str() const {
        if (e_.empty()) return "1";
        std::string out;
        for (const auto& [v, d] : e_) {
            if (!out.empty()) out += " ";
            out += v;
            if (d != 2) {
                out += "^";
                if (d % 2 == 0)
                    out += std::to_string(d / 2);
                else
                    out += std::to_string(d) + "/2";
            }
        }
        return out;
    }

  private:
    std::map<std::string, int> e_;  // name -> doubled exponent, no zero entries
};

}  // namespace ellsc
