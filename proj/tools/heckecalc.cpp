// Command-line driver: load a block specification, run the parameter
// pipeline, and emit the report.
//
// Exit codes: 0 success, 1 input error, 2 certificate failure.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hecke/calc.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "heckecalc: affine Hecke algebra parameters for depth-zero blocks"};
    std::string spec_path, table_path, emit_mode = "text", out_path;
    long long q = 0;
    bool check_oracle = false;
    app.add_option("--spec", spec_path, "block specification (JSON)")->required();
    app.add_option("--table", table_path, "parameter table (JSON)");
    app.add_option("--q", q, "residue cardinality for specialization");
    app.add_option("--emit", emit_mode, "output mode: text or machine")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--check-oracle", check_oracle,
                 "cross-validate parameters against the finite-group oracle");
    app.add_option("--out", out_path, "write the report to a file");
    CLI11_PARSE(app, argc, argv);

    try {
        hecke::BlockSpec spec = hecke::load_spec(spec_path);
        if (q) {
            if (q < 2) throw hecke::ValidationError("--q must be at least 2");
            spec.options.q = q;
        }
        if (check_oracle) spec.options.check_oracle = true;

        hecke::ParameterTable table;
        bool have_table = false;
        if (table_path.empty()) table_path = spec.options.table_path;
        if (!table_path.empty()) {
            table = hecke::load_parameter_table(table_path);
            have_table = true;
        }
        hecke::Report rep = hecke::run_pipeline(spec, have_table ? &table : nullptr);
        std::string text = hecke::emit_report(rep, emit_mode);
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path);
            if (!out) throw hecke::Error("cannot write " + out_path);
            out << text;
        }
        return 0;
    } catch (const hecke::CertificateError& e) {
        std::cerr << "certificate failure: " << e.what() << "\n";
        return 2;
    } catch (const hecke::ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
