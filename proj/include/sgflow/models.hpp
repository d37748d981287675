#pragma once

#include <string>
#include <vector>

#include "sgflow/flow.hpp"

namespace sgflow {

// Concrete flow problem with analytically known critical points and strata,
// plus the metadata used to certify the abstract-scheme hypotheses on it.
struct ModelInstance {
    std::string name;
    FlowProblem problem;
    Vec box_lo, box_hi;  // sampling box used for certification
    std::vector<std::string> certified;
};

struct GridConfig {
    int samples_per_axis = 161;
    int ring_samples = 720;              // extra samples just outside each eps-ball
    std::vector<double> eps_table = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.32, 0.35, 0.4, 0.45, 0.5};
    double floor_deflation = 0.95;       // certified A(eps) = deflation * sampled min
    int fd_check_points = 50;            // gradient vs finite differences
    double fd_rel_tol = 1e-6;
};

struct AxiomReport {
    struct Item {
        std::string axiom;  // "a", "c", "e-1", "e-2", "e-3", "grad-fd"
        bool pass;
        std::string detail;
    };
    std::vector<Item> items;
    std::vector<std::pair<double, double>> gradient_floor;  // (eps, sampled A(eps))
    bool all_pass() const;
    const Item* find(const std::string& axiom) const;
};

// 2-D model: f(x,y) = x^4 - (1-2y^2) x^2 + 1 + y^4 on {0 < x <= 1.25,
// |y| <= 1.5}. Interior minimum at (1/sqrt2, 0) with f = 3/4; the stratum
// point (0,0) has f = 1 and restart path t -> (t, 0). For y^2 > 1/2 the
// x-dynamics push toward the stratum. The gradient floor is certified by
// sampling at construction.
ModelInstance default_model(const GridConfig& grid = {});

// f = |x|^2 with G = {0}; exact exponential flow, A(eps) = 2 eps exactly.
ModelInstance quadratic_model(int dim);

// Numerically certifies (a) the floor, (c) the gradient cap, (e-1) the
// per-eps gradient floor, (e-2) separation of G, (e-3) descent of the
// restart path, and the closed-form gradient against finite differences.
AxiomReport validate_axioms(const ModelInstance& model, const GridConfig& grid = {});

// Manifest schema: {"name", "dimension", "f": expr, "box": {"lo": [..],
// "hi": [..]}, "open_lower_face": bool, "g_points": [{"point": [..],
// "terminal": bool}], "separation": {"n": int, "delta": x}, "restarts":
// [{"g_index": i, "path": [[..], ...]}], "floor": x, "cap": x, "eps0": x,
// "small_gradient": {"type": "linear", "slope": s} | {"type": "sampled"}}
ModelInstance model_from_manifest(const std::string& json_path, const GridConfig& grid = {});

ModelInstance model_by_name(const std::string& name, const GridConfig& grid = {});

}  // namespace sgflow
