#pragma once

#include <feec/layout.hpp>

#include <json.hpp>

#include <string>

namespace feec {

// Mesh JSON: {"vertices": [[x, y, ...], ...], "cells": [[i, ...], ...],
// "boundary": "auto" | [[i, ...], ...]}. Vertex indices are 0-based and
// coordinates are read exactly (decimal literals become rationals).
// Unknown keys are ignored.
Complex mesh_from_json(const nlohmann::json& j);
Complex load_mesh(const std::string& path);

// Order-spec JSON:
//   {"default": {"family": "trimmed"|"full", "order": r},
//    "overrides": [{"simplex": [ids], "k": k, "family": f, "order": r}, ...]}
// A trimmed default of order r assigns P_r^- Lambda^k everywhere; a full
// default assigns P_{r-k} Lambda^k. Overrides replace the symbol of one
// simplex at one form degree.
SequenceAssignment order_spec_from_json(const nlohmann::json& j, const Complex& c);
SequenceAssignment load_order_spec(const std::string& path, const Complex& c);

// GlobalForm JSON: {"layout-hash": ..., "whitney": [...],
// "interior": {"i,j,...": [coeffs], ...}} with exact rational coefficients
// serialized as strings.
nlohmann::json form_to_json(const GlobalForm& g);
GlobalForm form_from_json(const nlohmann::json& j, const DofLayout& layout);

Rational rational_from_json(const nlohmann::json& j);
std::string rational_to_json(const Rational& x);

} // namespace feec
