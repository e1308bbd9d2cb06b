#pragma once

// Environment model: an ordered chain of overlapping convex cells, each
// carrying one polynomial segment, plus JSON ingestion/persistence and the
// validation checks the synthesis/simulation pipeline relies on.

#include <tracksyn/bernstein.hpp>
#include <tracksyn/polytope.hpp>

#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace tracksyn {

struct Cell {
    std::string id;
    Polytope polytope;
    ControlPoints segment;
    std::optional<std::string> successor;
};

struct Environment {
    std::vector<Cell> cells;
    int dimension = 0;
    int degree = 0;

    const Cell* find(const std::string& id) const {
        for (const auto& c : cells)
            if (c.id == id) return &c;
        return nullptr;
    }
    int index_of(const std::string& id) const {
        for (size_t i = 0; i < cells.size(); ++i)
            if (cells[i].id == id) return static_cast<int>(i);
        return -1;
    }
};

struct ValidationIssue {
    std::string cell_id;
    std::string check;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool empty() const { return issues.empty(); }

    std::string to_string() const {
        std::ostringstream os;
        for (const auto& i : issues)
            os << i.cell_id << " [" << i.check << "] " << i.message << "\n";
        return os.str();
    }
};

namespace detail {

inline void check_or_add(ValidationReport& rep, bool ok, const std::string& cell,
                         const std::string& check, const std::string& msg) {
    if (!ok) rep.issues.push_back({cell, check, msg});
}

}  // namespace detail

// Chain-local validation: face normalization, nonempty interiors,
// control-point containment, successor ordering, switching-point continuity
// and membership in a nonempty overlap. Global coverage of the workspace is
// deliberately not checked; nothing downstream depends on it.
inline ValidationReport validate(const Environment& env) {
    ValidationReport rep;
    const size_t n = env.cells.size();
    detail::check_or_add(rep, n > 0, "", "chain", "environment has no cells");

    for (size_t i = 0; i < n; ++i) {
        const Cell& cell = env.cells[i];
        for (size_t j = i + 1; j < n; ++j)
            detail::check_or_add(rep, env.cells[j].id != cell.id, cell.id, "chain",
                                 "duplicate cell id");

        for (int r = 0; r < cell.polytope.faces(); ++r)
            detail::check_or_add(rep, std::abs(cell.polytope.A().row(r).norm() - 1.0) <= 1e-12,
                                 cell.id, "normalization",
                                 "face row " + std::to_string(r) + " is not unit norm");

        try {
            const auto ball = chebyshev_center(cell.polytope);
            detail::check_or_add(rep, ball.radius > 0.0, cell.id, "interior",
                                 "cell polytope has empty interior");
        } catch (const std::exception& e) {
            rep.issues.push_back({cell.id, "interior", e.what()});
        }

        for (int k = 0; k <= cell.segment.degree(); ++k)
            detail::check_or_add(
                rep, contains(cell.polytope, cell.segment.point(k), 1e-9), cell.id,
                "containment",
                "control point " + std::to_string(k) + " lies outside the cell");

        const bool last = (i + 1 == n);
        if (last) {
            detail::check_or_add(rep, !cell.successor.has_value(), cell.id, "chain",
                                 "last cell must not have a successor");
            continue;
        }
        const Cell& next = env.cells[i + 1];
        if (!cell.successor.has_value() || *cell.successor != next.id) {
            rep.issues.push_back({cell.id, "chain",
                                  "successor must be the next cell in order (" + next.id + ")"});
            continue;
        }
        const Vector handoff = cell.segment.point(cell.segment.degree());
        detail::check_or_add(rep, (handoff - next.segment.point(0)).norm() <= 1e-9,
                             cell.id, "continuity",
                             "segment end does not meet the successor segment start");
        const Polytope overlap = intersect(cell.polytope, next.polytope);
        try {
            const auto ball = chebyshev_center(overlap);
            detail::check_or_add(rep, ball.radius > 0.0, cell.id, "overlap",
                                 "overlap with successor has empty interior");
        } catch (const std::exception& e) {
            rep.issues.push_back({cell.id, "overlap", e.what()});
        }
        detail::check_or_add(rep, interior_margin(overlap, handoff) > 0.0, cell.id,
                             "switching-point",
                             "switching point is not strictly inside the overlap");
    }
    return rep;
}

namespace detail {

inline std::string cell_path(size_t i) { return "cells[" + std::to_string(i) + "]"; }

[[noreturn]] inline void schema_error(const std::string& path, const std::string& what) {
    throw std::runtime_error("environment schema: " + path + ": " + what);
}

inline double number_at(const nlohmann::json& j, const std::string& path) {
    if (!j.is_number()) schema_error(path, "expected a number");
    return j.get<double>();
}

}  // namespace detail

inline Environment environment_from_json(const nlohmann::json& doc) {
    using nlohmann::json;
    Environment env;
    if (!doc.is_object()) detail::schema_error("$", "expected an object");
    if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
        detail::schema_error("dimension", "expected an integer");
    if (!doc.contains("spline_degree") || !doc["spline_degree"].is_number_integer())
        detail::schema_error("spline_degree", "expected an integer");
    env.dimension = doc["dimension"].get<int>();
    env.degree = doc["spline_degree"].get<int>();
    if (env.dimension < 1) detail::schema_error("dimension", "must be >= 1");
    if (env.degree < 0) detail::schema_error("spline_degree", "must be >= 0");
    if (!doc.contains("cells") || !doc["cells"].is_array())
        detail::schema_error("cells", "expected an array");

    const auto& cells = doc["cells"];
    for (size_t i = 0; i < cells.size(); ++i) {
        const auto& jc = cells[i];
        const std::string base = detail::cell_path(i);
        if (!jc.is_object()) detail::schema_error(base, "expected an object");
        if (!jc.contains("id") || !jc["id"].is_string())
            detail::schema_error(base + ".id", "expected a string");
        const std::string id = jc["id"].get<std::string>();

        if (!jc.contains("halfspaces") || !jc["halfspaces"].is_array() ||
            jc["halfspaces"].empty())
            detail::schema_error(base + ".halfspaces", "expected a nonempty array (cell " + id + ")");
        const auto& hs = jc["halfspaces"];
        Matrix A(hs.size(), env.dimension);
        Vector b(hs.size());
        for (size_t r = 0; r < hs.size(); ++r) {
            const std::string hp = base + ".halfspaces[" + std::to_string(r) + "]";
            if (!hs[r].is_object() || !hs[r].contains("normal") || !hs[r].contains("offset"))
                detail::schema_error(hp, "expected {normal, offset} (cell " + id + ")");
            const auto& nrm = hs[r]["normal"];
            if (!nrm.is_array() || static_cast<int>(nrm.size()) != env.dimension)
                detail::schema_error(hp + ".normal",
                                     "expected " + std::to_string(env.dimension) +
                                         " numbers (cell " + id + ")");
            for (int k = 0; k < env.dimension; ++k)
                A(r, k) = detail::number_at(nrm[k], hp + ".normal[" + std::to_string(k) + "]");
            b[r] = detail::number_at(hs[r]["offset"], hp + ".offset");
        }

        if (!jc.contains("control_points") || !jc["control_points"].is_array())
            detail::schema_error(base + ".control_points", "expected an array (cell " + id + ")");
        const auto& cps = jc["control_points"];
        if (static_cast<int>(cps.size()) != env.degree + 1)
            detail::schema_error(base + ".control_points",
                                 "expected exactly " + std::to_string(env.degree + 1) +
                                     " points (cell " + id + ")");
        Matrix P(env.dimension, env.degree + 1);
        for (size_t k = 0; k < cps.size(); ++k) {
            const std::string pp = base + ".control_points[" + std::to_string(k) + "]";
            if (!cps[k].is_array() || static_cast<int>(cps[k].size()) != env.dimension)
                detail::schema_error(pp, "expected " + std::to_string(env.dimension) +
                                             " coordinates (cell " + id + ")");
            for (int dkk = 0; dkk < env.dimension; ++dkk)
                P(dkk, k) = detail::number_at(cps[k][dkk], pp + "[" + std::to_string(dkk) + "]");
        }

        std::optional<std::string> succ;
        if (jc.contains("successor") && !jc["successor"].is_null()) {
            if (!jc["successor"].is_string())
                detail::schema_error(base + ".successor", "expected a string or null (cell " + id + ")");
            succ = jc["successor"].get<std::string>();
        }

        try {
            env.cells.push_back(Cell{id, Polytope(std::move(A), std::move(b)),
                                     ControlPoints(std::move(P)), std::move(succ)});
        } catch (const std::invalid_argument& e) {
            detail::schema_error(base, std::string(e.what()) + " (cell " + id + ")");
        }
    }
    return env;
}

inline Environment load_environment(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open environment file: " + path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        // e.byte carries the offending byte offset
        throw std::runtime_error("environment parse error at byte " +
                                 std::to_string(e.byte) + ": " + e.what());
    }
    return environment_from_json(doc);
}

inline nlohmann::json environment_to_json(const Environment& env) {
    nlohmann::json doc;
    doc["dimension"] = env.dimension;
    doc["spline_degree"] = env.degree;
    doc["cells"] = nlohmann::json::array();
    for (const auto& cell : env.cells) {
        nlohmann::json jc;
        jc["id"] = cell.id;
        jc["halfspaces"] = nlohmann::json::array();
        for (int r = 0; r < cell.polytope.faces(); ++r) {
            nlohmann::json hs;
            hs["normal"] = std::vector<double>(
                cell.polytope.A().row(r).begin(), cell.polytope.A().row(r).end());
            hs["offset"] = cell.polytope.b()[r];
            jc["halfspaces"].push_back(std::move(hs));
        }
        jc["control_points"] = nlohmann::json::array();
        for (int k = 0; k <= cell.segment.degree(); ++k) {
            const Vector p = cell.segment.point(k);
            jc["control_points"].push_back(std::vector<double>(p.begin(), p.end()));
        }
        if (cell.successor) jc["successor"] = *cell.successor;
        else jc["successor"] = nullptr;
        doc["cells"].push_back(std::move(jc));
    }
    return doc;
}

inline void save_environment(const Environment& env, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write environment file: " + path);
    out << environment_to_json(env).dump(2) << "\n";
}

}  // namespace tracksyn
