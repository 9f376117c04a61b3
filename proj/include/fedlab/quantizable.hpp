#ifndef FEDLAB_QUANTIZABLE_HPP
#define FEDLAB_QUANTIZABLE_HPP

#include <stdexcept>
#include <string>

#include <fedlab/fedosov.hpp>

namespace fedlab
{

struct KillingCheck {
    /// nabla^{0,1}(d_jbar f0 ybar^j) = 0
    bool condition_holds = false;
    /// d_jbar f0 w^{i jbar} holomorphic for every i
    bool v10_holomorphic = false;
    /// (1/4pi) d_lbar Lap f0 = d_jbar f0 w^{k jbar} Ric_{k lbar}
    bool ricci_identity = false;
};

KillingCheck check_killing_condition(const KahlerGeometry &g, const ChartFunction &f0);

/// Raised by make_degree1 when f0 fails the Killing condition and force is off.
class NotKillingError : public std::runtime_error
{
public:
    explicit NotKillingError(const std::string &what) : std::runtime_error("not-Killing: " + what) {}
};

struct QuantizableFunction {
    ChartFunction f0;
    PiScalar c;
    /// f0 - (hbar/4pi)(Lap f0 + c)
    HbarPoly formal;
    FlatSection section;
    bool killing = false;
    int ybar_degree = 0;
    int hbar_degree = 0;
};

/// hbar^0 and hbar^1 parts of f0 - (hbar/4pi)(Lap f0 + c).
HbarPoly degree1_formal(const KahlerGeometry &g, const ChartFunction &f0, const PiScalar &c = {});

QuantizableFunction make_degree1(const FedosovConnection &conn, const ChartFunction &f0, const PiScalar &c = {},
                                 bool force = false);

/// Substitutes hbar = 1/k and re-checks flatness under D_{alpha,k} on the weights the truncation fully determines.
WeylElement evaluate_level(const FedosovConnection &conn, const QuantizableFunction &q, int k);
/// Sym-degree bound below which a level-k section of hbar-degree h is fully determined by a truncation at N.
int level_window(int order, int hbar_bound);

struct Formalized {
    QuantizableFunction q;
    /// s - evaluate_level(q, k) has this holomorphic symbol.
    ChartFunction correction;
    /// f0 of q plus the correction (the recovered level-independent potential).
    ChartFunction recovered;
};

Formalized formalize_level_section(const FedosovConnection &conn, int k, const WeylElement &s);

} // namespace fedlab

#endif
