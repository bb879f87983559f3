#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gco/bench.hpp"
#include "gco/flow.hpp"
#include "gco/gco_loop.hpp"
#include "gco/policy.hpp"
#include "gco/svg.hpp"

namespace py = pybind11;
using namespace gco;

namespace {

using Pt = std::pair<double, double>;

Vec2 to_vec(Pt p) {
    return {p.first, p.second};
}

Pt from_vec(Vec2 v) {
    return {v.x, v.y};
}

ConvexPolygon to_poly(const std::vector<Pt>& pts) {
    ConvexPolygon poly;
    for (Pt p : pts) poly.vertices.push_back(to_vec(p));
    return poly;
}

MotionEdge to_edge(Pt from, Pt to) {
    return {0, to_vec(from), to_vec(to), EdgeKind::Move};
}

Pose2 to_pose(std::tuple<double, double, double> p) {
    return {{std::get<0>(p), std::get<1>(p)}, normalize_angle(std::get<2>(p))};
}

py::dict plan_result_to_dict(const PlanResult& res) {
    py::dict out;
    out["success"] = res.success;
    out["iterations"] = res.iterations;
    out["swaps"] = res.swap_count;
    out["waits"] = res.wait_count;
    out["sum_path_length"] = res.sum_path_length;
    out["assignment"] = res.assignment;
    py::list trajs;
    for (const auto& tr : res.trajectories) {
        py::list t;
        for (Vec2 v : tr) t.append(from_vec(v));
        trajs.append(t);
    }
    out["trajectories"] = trajs;
    return out;
}

class PyVelocityOracle : public VelocityOracle {
public:
    std::vector<double> continuous_velocity(double t, const ContinuousState& X,
                                            const DiscreteState& K,
                                            const Condition& cond) const override {
        PYBIND11_OVERRIDE_PURE(std::vector<double>, VelocityOracle, continuous_velocity, t, X, K,
                               cond);
    }
    std::vector<double> discrete_velocity(double t, const ContinuousState& X,
                                          const DiscreteState& K,
                                          const Condition& cond) const override {
        PYBIND11_OVERRIDE_PURE(std::vector<double>, VelocityOracle, discrete_velocity, t, X, K,
                               cond);
    }
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "multi-robot coordination toolkit: anonymous motion planning, "
              "flow-matching sampling, and quasi-static pushing simulation";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<InvalidGeometryError>(m, "InvalidGeometryError", PyExc_ValueError);
    py::register_exception<OutOfBoundsError>(m, "OutOfBoundsError", PyExc_IndexError);
    py::register_exception<SamplingError>(m, "SamplingError", PyExc_RuntimeError);
    py::register_exception<NotFoundError>(m, "NotFoundError", PyExc_KeyError);

    // Geometry.
    m.def(
        "edge_edge_conflict",
        [](Pt a0, Pt a1, Pt b0, Pt b1, double r) {
            return edge_edge_conflict(to_edge(a0, a1), to_edge(b0, b1), r);
        },
        py::arg("e1_from"), py::arg("e1_to"), py::arg("e2_from"), py::arg("e2_to"),
        py::arg("radius"),
        "Continuous-time conflict between two disks sliding along their edges.");
    m.def(
        "edge_state_conflict",
        [](Pt from, Pt to, Pt q, double r) {
            return edge_state_conflict(to_edge(from, to), to_vec(q), r);
        },
        py::arg("e_from"), py::arg("e_to"), py::arg("q"), py::arg("radius"));
    m.def(
        "disk_polygon_overlap",
        [](Pt center, double radius, const std::vector<Pt>& vertices)
            -> std::optional<std::pair<double, Pt>> {
            const auto pen = disk_polygon_overlap({to_vec(center), radius}, to_poly(vertices));
            if (!pen) return std::nullopt;
            return std::make_pair(pen->depth, from_vec(pen->direction));
        },
        py::arg("center"), py::arg("radius"), py::arg("vertices"),
        "Minimal translation (depth, direction) pushing the disk out, or None.");
    m.def(
        "transform_polygon",
        [](std::tuple<double, double, double> pose, const std::vector<Pt>& vertices) {
            std::vector<Pt> out;
            for (Vec2 v : transform_polygon(to_pose(pose), to_poly(vertices)).vertices)
                out.push_back(from_vec(v));
            return out;
        },
        py::arg("pose"), py::arg("vertices"));

    // Planning over scenario JSON.
    m.def(
        "plan",
        [](const std::string& scenario_json, const std::string& algo, uint64_t seed) {
            const Scenario s = scenario_from_json(nlohmann::json::parse(scenario_json));
            return plan_result_to_dict(run_plan(s, algo_from_name(algo), seed).result);
        },
        py::arg("scenario_json"), py::arg("algo") = "gspi", py::arg("seed") = 1,
        "Run the anonymous multi-robot planner on a gco-scenario/1 JSON document.");
    m.def(
        "run_gco",
        [](const std::string& scenario_json, const std::string& policy, uint64_t seed) {
            const Scenario s = scenario_from_json(nlohmann::json::parse(scenario_json));
            const GcoRun run = run_gco(s, policy, seed);
            py::dict out;
            out["success"] = run.episode.success;
            out["actions_used"] = run.episode.actions_used;
            out["avg_distance_per_robot"] = run.episode.avg_distance_per_robot;
            out["trace"] = run.trace.dump();
            return out;
        },
        py::arg("scenario_json"), py::arg("policy") = "heuristic", py::arg("seed") = 1,
        "Run the closed observe-plan-generate-execute manipulation loop.");
    m.def("builtin_scenario", [](const std::string& name) {
        for (const Scenario& s : generate_suite())
            if (s.name == name) return scenario_to_json(s).dump();
        if (name == "gco_push_single") return scenario_to_json(make_gco_push_single()).dump();
        if (name == "gco_push_multi") return scenario_to_json(make_gco_push_multi()).dump();
        throw NotFoundError("unknown builtin scenario: " + name);
    });
    m.def("builtin_scenario_names", [] {
        std::vector<std::string> names;
        for (const Scenario& s : generate_suite()) names.push_back(s.name);
        names.push_back("gco_push_single");
        names.push_back("gco_push_multi");
        return names;
    });
    m.def(
        "render_svg",
        [](const std::string& scenario_json, const std::string& trajectories_jsonl) {
            const Scenario s = scenario_from_json(nlohmann::json::parse(scenario_json));
            return render_svg(s, trajectories_from_jsonl(trajectories_jsonl));
        },
        py::arg("scenario_json"), py::arg("trajectories_jsonl") = "");

    // Flow-matching machinery.
    py::class_<ContinuousState>(m, "ContinuousState")
        .def(py::init<int, int>(), py::arg("slots") = kBudgetMax, py::arg("horizon") = 16)
        .def_readwrite("values", &ContinuousState::values)
        .def_readonly("slots", &ContinuousState::slots)
        .def_readonly("horizon", &ContinuousState::horizon);
    py::class_<DiscreteState>(m, "DiscreteState")
        .def(py::init<int>(), py::arg("vocab") = 64)
        .def_readwrite("tokens", &DiscreteState::tokens)
        .def_readonly("vocab", &DiscreteState::vocab)
        .def_property_readonly("categories", &DiscreteState::categories);
    py::class_<Condition>(m, "Condition")
        .def(py::init<>())
        .def_readwrite("image_width", &Condition::image_width)
        .def_readwrite("image", &Condition::image)
        .def_readwrite("budget", &Condition::budget)
        .def_property(
            "transform",
            [](const Condition& c) {
                return std::make_tuple(c.transform.translation.x, c.transform.translation.y,
                                       c.transform.rotation);
            },
            [](Condition& c, std::tuple<double, double, double> t) {
                c.transform = to_pose(t);
            });
    py::class_<CounterRng>(m, "CounterRng")
        .def(py::init<uint64_t>(), py::arg("seed") = 0)
        .def("uniform", &CounterRng::uniform);
    py::class_<VelocityOracle, PyVelocityOracle>(m, "VelocityOracle")
        .def(py::init<>())
        .def("continuous_velocity", &VelocityOracle::continuous_velocity)
        .def("discrete_velocity", &VelocityOracle::discrete_velocity);

    m.attr("BUDGET_MAX") = kBudgetMax;
    m.attr("MASK_TOKEN") = kMaskToken;
    m.def("interp_continuous", &interp_continuous);
    m.def("interp_discrete", &interp_discrete, py::arg("k0"), py::arg("k1"), py::arg("t"),
          py::arg("rng"), py::arg("epoch") = 0);
    m.def("sample_continuous", &sample_continuous, py::arg("oracle"), py::arg("x0"),
          py::arg("steps") = kDefaultSampleSteps, py::arg("cond") = Condition{});
    m.def("sample_discrete", &sample_discrete, py::arg("oracle"), py::arg("k0"),
          py::arg("steps") = kDefaultSampleSteps, py::arg("cond") = Condition{},
          py::arg("rng") = CounterRng{0});
    m.def("cogenerate", &cogenerate, py::arg("oracle"), py::arg("x0"), py::arg("k0"),
          py::arg("steps") = kDefaultSampleSteps, py::arg("cond") = Condition{},
          py::arg("rng") = CounterRng{0});
    m.def("fm_loss_continuous", &fm_loss_continuous);
    m.def("fm_loss_discrete", &fm_loss_discrete);
    m.def("budget_loss", &budget_loss);

    // Manipulation policy.
    m.def(
        "heuristic_policy",
        [](const std::vector<uint8_t>& image, int width, Pt center, double resolution,
           std::tuple<double, double, double> transform, int budget) {
            Observation obs;
            obs.frame = {to_vec(center), resolution, width};
            obs.image.width = width;
            obs.image.pixels = image;
            const PolicyOutput out = heuristic_policy(obs, to_pose(transform), budget);
            py::dict d;
            py::list contacts;
            for (const Contact& c : out.contacts.contacts)
                contacts.append(c.masked ? py::object(py::none())
                                         : py::object(py::cast(from_vec(c.point))));
            d["contacts"] = contacts;
            py::list trajs;
            for (const auto& traj : out.trajectories.trajectories) {
                py::list t;
                for (Vec2 v : traj) t.append(from_vec(v));
                trajs.append(t);
            }
            d["trajectories"] = trajs;
            d["rotation_only"] = out.rotation_only;
            return d;
        },
        py::arg("image"), py::arg("width"), py::arg("center"), py::arg("resolution"),
        py::arg("transform"), py::arg("budget"),
        "Rule-based contact placement and straight-line manipulation trajectories.");
    m.def(
        "decode_contacts",
        [](const std::vector<int>& tokens, int width, double resolution) {
            DiscreteState k(width);
            if (tokens.size() != k.tokens.size())
                throw ValidationError("decode_contacts: expected 2 * 3 tokens");
            k.tokens = tokens;
            const ContactSet contacts = decode_contacts(k, {{0, 0}, resolution, width});
            py::list out;
            for (const Contact& c : contacts.contacts)
                out.append(c.masked ? py::object(py::none())
                                    : py::object(py::cast(from_vec(c.point))));
            return out;
        },
        py::arg("tokens"), py::arg("width") = 64, py::arg("resolution") = 0.02);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
