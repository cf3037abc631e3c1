#pragma once

#include <string>
#include <vector>

#include "hilbq/surface.hpp"

namespace hilbq {

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;  // first mismatch location on failure
};

struct CheckReport {
    std::vector<CheckLine> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    void add(const std::string& name, bool ok, const std::string& detail = {}) {
        lines.push_back({name, ok, detail});
    }
    void add_mismatch(const std::string& name, const std::string& mismatch) {
        lines.push_back({name, mismatch.empty(), mismatch});
    }
};

struct VerifyConfig {
    int n = 2;
    int q_order = 4;
    int p_window = 12;
    int z_order = 8;
    int n_max = 4;
};

// Named identity suites. Every identity is exact on its stated window.
CheckReport verify_heisenberg(const SurfaceModel& s, const VerifyConfig& cfg);
CheckReport verify_lehn(const SurfaceModel& s, const VerifyConfig& cfg);
CheckReport verify_jacobi(const VerifyConfig& cfg);
CheckReport verify_wallcross(const SurfaceModel& s, const VerifyConfig& cfg);
CheckReport verify_basic_check(const VerifyConfig& cfg);
CheckReport verify_dr_oracle(const VerifyConfig& cfg);
CheckReport verify_exc_consistency(const VerifyConfig& cfg);

// Builds the fixed genus-0 degree-1 elliptic model (section with
// self-intersection -1, eight pairing-orthogonal filler classes).
SurfaceModel rational_elliptic_model();

}  // namespace hilbq
