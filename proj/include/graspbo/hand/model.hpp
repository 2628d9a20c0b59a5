#pragma once

#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include "graspbo/core/types.hpp"

namespace graspbo {

// three-fingered underactuated hand: spread couples fingers 2 and 3 about the
// palm axis, each finger has an actuated proximal joint and a passive distal
// joint (distal = coupling * proximal + breakaway offset)
struct HandModel {
    double palm_radius = 0.05;
    double proximal_length = 0.07;
    double distal_length = 0.056;
    double capsule_radius = 0.01;
    double coupling = 1.0 / 3.0;
    Vec2 spread_limits{0.0, M_PI};
    Vec2 proximal_limits{0.0, 2.44};
    // rim mount angles at zero spread; finger 0 is the fixed thumb
    std::array<double, 3> mount_angles{1.5 * M_PI, 0.25 * M_PI, 0.75 * M_PI};
    Vec4 speeds{0.0, 1.0, 1.0, 1.0};  // autograsp speed ratios [spread, f1, f2, f3]

    void validate() const {
        require(palm_radius > 0 && proximal_length > 0 && distal_length > 0 && capsule_radius > 0,
                "HandConfig", "hand dimensions must be positive");
        require(coupling > 0 && coupling <= 1.0, "HandConfig", "coupling must be in (0,1]");
        require(spread_limits(0) < spread_limits(1) && proximal_limits(0) < proximal_limits(1),
                "HandConfig", "joint limits must satisfy min < max");
        require(speeds.minCoeff() >= 0.0, "HandConfig", "speed ratios must be nonnegative");
    }

    double distal_max() const { return coupling * proximal_limits(1); }

    nlohmann::json to_json() const {
        return nlohmann::json{{"palm_radius", palm_radius},
                              {"proximal_length", proximal_length},
                              {"distal_length", distal_length},
                              {"capsule_radius", capsule_radius},
                              {"coupling", coupling},
                              {"spread_limits", {spread_limits(0), spread_limits(1)}},
                              {"proximal_limits", {proximal_limits(0), proximal_limits(1)}},
                              {"mount_angles", mount_angles},
                              {"speeds", {speeds(0), speeds(1), speeds(2), speeds(3)}}};
    }

    static HandModel from_json(const nlohmann::json& j) {
        HandModel m;
        for (auto it = j.begin(); it != j.end(); ++it) {
            const std::string& k = it.key();
            if (k == "palm_radius") m.palm_radius = it->get<double>();
            else if (k == "proximal_length") m.proximal_length = it->get<double>();
            else if (k == "distal_length") m.distal_length = it->get<double>();
            else if (k == "capsule_radius") m.capsule_radius = it->get<double>();
            else if (k == "coupling") m.coupling = it->get<double>();
            else if (k == "spread_limits") {
                auto v = it->get<std::vector<double>>();
                require(v.size() == 2, "HandConfig", "spread_limits must be [min,max]");
                m.spread_limits << v[0], v[1];
            } else if (k == "proximal_limits") {
                auto v = it->get<std::vector<double>>();
                require(v.size() == 2, "HandConfig", "proximal_limits must be [min,max]");
                m.proximal_limits << v[0], v[1];
            } else if (k == "mount_angles") {
                auto v = it->get<std::vector<double>>();
                require(v.size() == 3, "HandConfig", "mount_angles must have 3 entries");
                m.mount_angles = {v[0], v[1], v[2]};
            } else if (k == "speeds") {
                auto v = it->get<std::vector<double>>();
                require(v.size() == 4, "HandConfig", "speeds must have 4 entries");
                m.speeds << v[0], v[1], v[2], v[3];
            } else {
                fail("HandConfig", "unknown hand key '" + k + "'");
            }
        }
        m.validate();
        return m;
    }
};

// actuated joints [spread, proximal 1..3] plus per-finger breakaway offsets
// accumulated after the proximal joint freezes
struct HandState {
    Vec4 q = Vec4::Zero();
    Vec3 distal_offset = Vec3::Zero();

    double spread() const { return q(0); }
    double proximal(int finger) const { return q(1 + finger); }
    double distal(const HandModel& m, int finger) const {
        return m.coupling * q(1 + finger) + distal_offset(finger);
    }
};

}  // namespace graspbo
