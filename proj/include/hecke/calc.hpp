#pragma once

// End-to-end pipeline: parse a depth-zero block specification, run the
// theta/affine analysis, classify the walls of the Levi-apartment
// arrangement, attach q-parameters (built-in oracle for principal-series
// classes, external table otherwise), and emit the resulting Hecke
// presentation.  File formats are JSON with an explicit schema_version.

#include <optional>
#include <string>

#include "hecke/heckealg.hpp"
#include "hecke/theta.hpp"

namespace hecke {

struct BlockOptions {
    std::optional<long long> q; // residue cardinality for specialization
    bool check_oracle = false;
    std::string cuspidal_label = "trivial";
    std::string table_path; // optional default parameter table
};

struct BlockSpec {
    RootDatum datum;
    FrobeniusAction frob;
    std::vector<LevelSet> levels; // aligned with datum.roots
    std::vector<int> levi;        // root indices of M, root-closed
    ThetaDatum theta;
    QVec x0;
    OmegaData omega; // trivial unless the spec provides a block
    bool omega_given = false;
    BlockOptions options;
};

BlockSpec load_spec(const std::string& path);
BlockSpec parse_spec_json(const std::string& text, const std::string& origin);

struct ParameterTableEntry {
    std::string type;     // orbit-label key of the wall's theta-side quotient
    std::string levi;     // label of the Levi part, "torus" when empty
    std::string cuspidal; // label of the cuspidal datum
    Rat exponent;         // q_s = q^exponent
    std::string provenance;
};

struct ParameterTable {
    std::vector<ParameterTableEntry> entries;
    const ParameterTableEntry* find(const std::string& type, const std::string& levi,
                                    const std::string& cuspidal) const;
};

ParameterTable load_parameter_table(const std::string& path);
ParameterTable parse_parameter_table_json(const std::string& text,
                                          const std::string& origin);

struct WallClassReport {
    IVec gradient;        // primitive, in apartment-slice coordinates
    LevelSet progression; // progression of the class within the family
    Rat level;            // representative wall level
    bool in_theta = false;
    std::string theta_type; // orbit labels of the theta-side quotient
    std::string levi_type;
    std::optional<Rat> q_exponent;
    std::optional<Rat> q_value; // specialized when options.q is present
    std::string source;         // theta-complement | principal-series | table | unresolved
    int relevant = -1;          // 1 / 0 / -1 = not decidable here
};

struct OracleCheck {
    std::string wall;
    std::string group;
    std::string character;
    Rat expected = Rat(1);
    Rat oracle = Rat(1);
    bool match = false;
};

struct Report {
    BlockSpec spec;
    std::vector<int> theta_roots;
    NormalizedSystem normalization;
    ThetaGroupDatum g_theta;
    std::vector<int> m_theta;
    bool apartment_certified = false;
    bool inclusion_certified = false;
    std::vector<WallClassReport> classes;
    bool presentation_complete = true;
    CoxeterPresentation presentation;
    std::vector<QPoly> parameters;       // per simple reflection
    std::vector<int> simple_class_index; // simple reflection -> wall class
    int omega_size = 1;
    std::vector<OracleCheck> oracle_checks;
};

Report run_pipeline(const BlockSpec& spec, const ParameterTable* table);

// mode: "text" or "machine" (stable JSON, sorted keys).
std::string emit_report(const Report& r, const std::string& mode);

} // namespace hecke
