#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "graspbo/planner/candidate.hpp"

namespace graspbo::io {

using nlohmann::json;

// poses persist as translation + unit quaternion (w,x,y,z); doubles use the
// shortest round-trip encoding, so translations survive bit-for-bit while the
// rotation matrix <-> quaternion conversion may drift by ~1 ulp
inline json pose_to_json(const Transform& t) {
    Quat q(t.linear());
    if (q.w() < 0.0) q.coeffs() = -q.coeffs();
    return json{{"translation", {t.translation().x(), t.translation().y(), t.translation().z()}},
                {"quaternion", {q.w(), q.x(), q.y(), q.z()}}};
}

inline Transform pose_from_json(const json& j) {
    require(j.contains("translation") && j.contains("quaternion"), "SchemaError",
            "pose needs translation + quaternion");
    const auto& tr = j.at("translation");
    const auto& qu = j.at("quaternion");
    require(tr.size() == 3 && qu.size() == 4, "SchemaError", "pose arrays have wrong length");
    Quat q(qu[0].get<double>(), qu[1].get<double>(), qu[2].get<double>(), qu[3].get<double>());
    require(std::abs(q.norm() - 1.0) < 1e-6, "NotARotation", "stored quaternion is not unit");
    Transform t = Transform::Identity();
    t.linear() = q.normalized().toRotationMatrix();
    t.translation() = Vec3(tr[0].get<double>(), tr[1].get<double>(), tr[2].get<double>());
    return t;
}

inline json vec3_to_json(const Vec3& v) { return json{v.x(), v.y(), v.z()}; }

inline Vec3 vec3_from_json(const json& j) {
    require(j.is_array() && j.size() == 3, "SchemaError", "expected a 3-vector");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline json contact_to_json(const Contact& c) {
    return json{{"point", vec3_to_json(c.point)},
                {"normal", vec3_to_json(c.normal)},
                {"finger", c.finger},
                {"link", c.link}};
}

inline Contact contact_from_json(const json& j) {
    Contact c;
    c.point = vec3_from_json(j.at("point"));
    c.normal = vec3_from_json(j.at("normal"));
    c.finger = j.at("finger").get<int>();
    c.link = j.at("link").get<int>();
    return c;
}

inline json candidate_to_json(const GraspCandidate& c) {
    json contacts = json::array();
    for (const Contact& ct : c.contacts) contacts.push_back(contact_to_json(ct));
    return json{{"palm", pose_to_json(c.palm)},
                {"joints", {c.q(0), c.q(1), c.q(2), c.q(3)}},
                {"distal_offset", vec3_to_json(c.distal_offset)},
                {"contacts", contacts},
                {"q_eps", c.q_eps},
                {"q_vol", c.q_vol},
                {"f_obj", c.f_obj},
                {"provenance", c.provenance},
                {"feasible", c.feasible}};
}

inline GraspCandidate candidate_from_json(const json& j) {
    GraspCandidate c;
    c.palm = pose_from_json(j.at("palm"));
    const auto& q = j.at("joints");
    require(q.size() == 4, "SchemaError", "joints must have 4 entries");
    for (int i = 0; i < 4; ++i) c.q(i) = q[size_t(i)].get<double>();
    c.distal_offset = vec3_from_json(j.at("distal_offset"));
    for (const auto& ct : j.at("contacts")) c.contacts.push_back(contact_from_json(ct));
    c.q_eps = j.at("q_eps").get<double>();
    c.q_vol = j.at("q_vol").get<double>();
    c.f_obj = j.at("f_obj").get<double>();
    c.provenance = j.at("provenance").get<std::string>();
    c.feasible = j.at("feasible").get<bool>();
    return c;
}

inline json trace_record_to_json(const TraceRecord& r) {
    return json{{"iteration", r.iteration}, {"phase", r.phase},
                {"ei", r.ei},               {"f_obj", r.f_obj},
                {"q_eps", r.q_eps},         {"q_vol", r.q_vol},
                {"primal_res", r.primal_res}, {"dual_res", r.dual_res},
                {"wall_ms", r.wall_ms}};
}

inline TraceRecord trace_record_from_json(const json& j) {
    TraceRecord r;
    r.iteration = j.at("iteration").get<int>();
    r.phase = j.at("phase").get<std::string>();
    r.ei = j.at("ei").get<double>();
    r.f_obj = j.at("f_obj").get<double>();
    r.q_eps = j.at("q_eps").get<double>();
    r.q_vol = j.at("q_vol").get<double>();
    r.primal_res = j.at("primal_res").get<double>();
    r.dual_res = j.at("dual_res").get<double>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

inline json plan_result_to_json(const PlanResult& r) {
    json top = json::array();
    for (const GraspCandidate& c : r.top) top.push_back(candidate_to_json(c));
    json trace = json::array();
    for (const TraceRecord& t : r.trace.records) trace.push_back(trace_record_to_json(t));
    return json{{"best", candidate_to_json(r.best)},
                {"top", top},
                {"trace", trace},
                {"evals", r.evals},
                {"wall_ms", r.wall_ms}};
}

inline PlanResult plan_result_from_json(const json& j) {
    PlanResult r;
    r.best = candidate_from_json(j.at("best"));
    for (const auto& c : j.at("top")) r.top.push_back(candidate_from_json(c));
    for (const auto& t : j.at("trace")) r.trace.records.push_back(trace_record_from_json(t));
    r.evals = j.at("evals").get<long>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

// drop wall-clock keys everywhere so two runs of the same seed compare equal
inline json strip_timing(json j) {
    if (j.is_object()) {
        j.erase("wall_ms");
        for (auto& [key, value] : j.items()) value = strip_timing(value);
    } else if (j.is_array()) {
        for (auto& value : j) value = strip_timing(value);
    }
    return j;
}

}  // namespace graspbo::io
