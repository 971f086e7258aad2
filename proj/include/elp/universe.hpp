#ifndef ELP_UNIVERSE_HPP
#define ELP_UNIVERSE_HPP

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace elp {

// ── Errors ──────────────────────────────────────────────────────────

struct ElpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Formula/term text did not conform to the grammar.
struct ParseError : ElpError {
    ParseError(const std::string& msg, std::size_t pos)
        : ElpError(msg + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

/// An identifier is not declared in the universe.
struct UnknownIdentifier : ElpError {
    using ElpError::ElpError;
};

/// The decision procedure ran out of its configured budget.  This is a
/// distinct failure, never a truth value.
struct ResourceBound : ElpError {
    using ElpError::ElpError;
};

/// Truth was queried for a formula that is not applicable at the state.
struct NotApplicable : ElpError {
    using ElpError::ElpError;
};

/// Product update eliminated the actual state.
struct ActualEliminated : ElpError {
    using ElpError::ElpError;
};

/// A term failed well-formedness checks.
struct IllFormed : ElpError {
    using ElpError::ElpError;
};

/// Substitution target variable is not free in the open model.
struct VariableNotFree : ElpError {
    using ElpError::ElpError;
};

/// Tree-based synthesis was asked for a model whose graph is not a tree.
struct NotATree : ElpError {
    using ElpError::ElpError;
};

/// Nested-loop search found a loop deeper than the requested cap.
struct CapExceeded : ElpError {
    using ElpError::ElpError;
};

/// The universe is too small to generate the requested object.
struct UniverseTooSmall : ElpError {
    using ElpError::ElpError;
};

// ── Universe ────────────────────────────────────────────────────────

/// A declared finite set of agents A and atoms P.  Every formula, model
/// and program lives over one universe.
struct Universe {
    std::vector<std::string> agents;
    std::vector<std::string> atoms;

    Universe() = default;
    Universe(std::vector<std::string> ags, std::vector<std::string> ats)
        : agents(std::move(ags)), atoms(std::move(ats)) {
        std::sort(agents.begin(), agents.end());
        agents.erase(std::unique(agents.begin(), agents.end()), agents.end());
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        for (const auto& a : agents)
            if (a.empty()) throw ElpError("empty agent id");
        for (const auto& p : atoms)
            if (p.empty()) throw ElpError("empty atom id");
    }

    bool has_agent(const std::string& a) const {
        return std::binary_search(agents.begin(), agents.end(), a);
    }
    bool has_atom(const std::string& p) const {
        return std::binary_search(atoms.begin(), atoms.end(), p);
    }
    void require_agent(const std::string& a) const {
        if (!has_agent(a)) throw UnknownIdentifier("unknown agent: " + a);
    }
    void require_atom(const std::string& p) const {
        if (!has_atom(p)) throw UnknownIdentifier("unknown atom: " + p);
    }

    bool operator==(const Universe& o) const = default;
};

using AgentSet = std::set<std::string>;

}  // namespace elp

#endif  // ELP_UNIVERSE_HPP
