#include "dynmix/exact.hpp"

namespace dynmix {

Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Int n(s);
            return Rat(n);
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw schema_error("rational with zero denominator: " + s);
        return make_rat(num, den);
    } catch (const std::invalid_argument&) {
        throw schema_error("malformed rational: " + s);
    }
}

std::string rat_to_string(const Rat& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

GaussInt gauss_exact_div(const GaussInt& a, const GaussInt& b) {
    if (b.is_zero()) throw hypothesis_error("Gaussian division by zero");
    Int n = gauss_norm(b);
    GaussInt num = a * conj(b);
    if (!mpz_divisible_p(num.re.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(num.im.get_mpz_t(), n.get_mpz_t())) {
        throw hypothesis_error("inexact Gaussian division");
    }
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    return q;
}

}  // namespace dynmix
