#pragma once

#include <stdexcept>
#include <string>

namespace rqmc {

// Thrown when an iterative numerical procedure fails to converge.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

enum class System { kg_oscillator, kg_box, dirac_oscillator, dirac_box };
enum class Branch { particle, antiparticle };

inline bool is_oscillator(System s) {
    return s == System::kg_oscillator || s == System::dirac_oscillator;
}

inline bool is_box(System s) {
    return s == System::kg_box || s == System::dirac_box;
}

inline const char* to_string(System s) {
    switch (s) {
        case System::kg_oscillator: return "kg-osc";
        case System::kg_box: return "kg-box";
        case System::dirac_oscillator: return "dirac-osc";
        case System::dirac_box: return "dirac-box";
    }
    return "?";
}

inline const char* to_string(Branch b) {
    return b == Branch::particle ? "particle" : "antiparticle";
}

inline System parse_system(const std::string& name) {
    if (name == "kg-osc") return System::kg_oscillator;
    if (name == "kg-box") return System::kg_box;
    if (name == "dirac-osc") return System::dirac_oscillator;
    if (name == "dirac-box") return System::dirac_box;
    throw std::invalid_argument("unknown system '" + name + "'");
}

inline Branch parse_branch(const std::string& name) {
    if (name == "particle") return Branch::particle;
    if (name == "antiparticle") return Branch::antiparticle;
    throw std::invalid_argument("unknown branch '" + name + "'");
}

// Dimensional context shared by every computation. omega applies to the
// oscillator systems, box_length to the box systems; both carry harmless
// defaults so one struct serves all four.
struct PhysicalParams {
    double mass = 1.0;
    double omega = 1.0;
    double box_length = 1.0;
    double hbar = 1.0;
    double c = 1.0;

    void validate() const {
        if (!(mass > 0.0) || !(omega > 0.0) || !(box_length > 0.0) ||
            !(hbar > 0.0) || !(c > 0.0)) {
            throw std::invalid_argument("physical parameters must be strictly positive");
        }
    }

    double rest_energy() const { return mass * c * c; }
};

inline PhysicalParams natural_params() { return PhysicalParams{}; }

// alpha = m*omega/hbar, the inverse squared oscillator length.
inline double alpha(const PhysicalParams& p) {
    p.validate();
    return p.mass * p.omega / p.hbar;
}

inline int min_quantum_number(System s) { return is_box(s) ? 1 : 0; }

// Which system, which level, which energy sign.  For dirac-box, n indexes
// the roots of the transcendental quantization condition.
struct StateSpec {
    System system = System::kg_oscillator;
    int n = 0;
    Branch branch = Branch::particle;

    void validate() const {
        if (n < min_quantum_number(system)) {
            throw std::invalid_argument(std::string(to_string(system)) +
                                        " requires n >= " +
                                        std::to_string(min_quantum_number(system)));
        }
        // The dirac-oscillator n = 0 level exists only on the particle branch:
        // the would-be negative-energy state at E = -mc^2 has vanishing norm.
        if (system == System::dirac_oscillator && branch == Branch::antiparticle && n == 0) {
            throw std::invalid_argument("dirac-osc antiparticle branch requires n >= 1");
        }
    }
};

enum class UnitMode { natural, custom };

struct UnitSystem {
    UnitMode mode = UnitMode::natural;
    PhysicalParams params{};

    static UnitSystem natural() { return UnitSystem{UnitMode::natural, natural_params()}; }

    static UnitSystem custom(const PhysicalParams& p) {
        p.validate();
        return UnitSystem{UnitMode::custom, p};
    }
};

} // namespace rqmc
