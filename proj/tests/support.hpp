#pragma once

#include <string>

#include <doctest.h>

#include <fedlab/expression.hpp>
#include <fedlab/fedosov.hpp>
#include <fedlab/geometry.hpp>
#include <fedlab/suite.hpp>

#include "oracles/frozen_values.inc"

namespace testing
{

inline fedlab::GeometryPtr cp1()
{
    static const fedlab::GeometryPtr g = fedlab::make_geometry("cp1-fs");
    return g;
}

inline fedlab::GeometryPtr flat1()
{
    static const fedlab::GeometryPtr g = fedlab::make_geometry("flat:1");
    return g;
}

inline fedlab::ChartFunction ex(const std::string &text, int dim = 1)
{
    return fedlab::parse_expression(text, dim);
}

inline fedlab::ChartFunction mu(int a)
{
    return fedlab::standard_symbols(*cp1()).at("mu" + std::to_string(a));
}

/// Frozen oracle value parsed into the C++ representation.
inline fedlab::ChartFunction oracle(const std::string &key, int dim = 1)
{
    const auto it = kOracle.find(key);
    REQUIRE_MESSAGE(it != kOracle.end(), "missing oracle key " << key);
    return fedlab::parse_expression(it->second, dim);
}

inline fedlab::PiScalar oracle_scalar(const std::string &key)
{
    const fedlab::ChartFunction f = oracle(key);
    REQUIRE(f.is_constant());
    return f.constant_value();
}

/// Connections are costly; share one per (alpha, order).
inline const fedlab::FedosovConnection &conn(const fedlab::GeometryPtr &g, fedlab::AlphaChoice a, int order)
{
    static std::map<std::tuple<const void *, int, int>, fedlab::FedosovConnection> cache;
    const auto key = std::make_tuple(static_cast<const void *>(g.get()), static_cast<int>(a), order);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, fedlab::solve_fedosov(g, a, order)).first;
    }
    return it->second;
}

} // namespace testing
