#include <fedlab/integrals.hpp>

#include <stdexcept>
#include <string>

namespace fedlab
{

mpq_class moment_integral(unsigned p, unsigned q, int s)
{
    const long need = static_cast<long>(std::max(p, q)) + 2;
    if (s < need && p == q) {
        throw std::domain_error("divergent moment integral (p=" + std::to_string(p) + ", s=" + std::to_string(s) + ")");
    }
    if (p != q) {
        if (static_cast<long>(p + q) / 2 + 2 > s) {
            throw std::domain_error("divergent moment integral");
        }
        return 0;
    }
    return factorial(p) * factorial(static_cast<unsigned>(s - static_cast<int>(p) - 2)) /
           factorial(static_cast<unsigned>(s - 1));
}

PiScalar chart_integral(const ChartFunction &f, int s)
{
    if (f.is_jet()) {
        throw std::domain_error("cannot integrate a jet");
    }
    PiScalar total;
    for (const auto &[k, c] : f.numerator()) {
        for (int i = 1; i < kMaxDim; ++i) {
            if (k.z(i) || k.zbar(i)) {
                throw std::domain_error("chart integral is one-dimensional");
            }
        }
        mpq_class m = moment_integral(k.z(0), k.zbar(0), s + f.denom_power());
        if (sgn(m) != 0) {
            total += PiScalar(c * GaussQ(m), k.pi);
        }
    }
    return total;
}

} // namespace fedlab
