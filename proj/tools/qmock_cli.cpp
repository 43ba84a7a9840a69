// Command-line front end: series dumps, identity verification, eta matching,
// congruence grids. Every run prints a single document that echoes the full
// effective configuration; all arithmetic payloads are exact strings. Exit
// status: 0 when every verdict is equal/holds, 1 when a verdict fails (the
// report is still emitted), 2 on usage errors.

#include <qmock/io.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace qmock;
using nlohmann::json;

enum class Format { json, csv, pretty };

Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "pretty") return Format::pretty;
    throw CLI::ValidationError("--format", "must be one of json|csv|pretty");
}

void emit(const json& doc, Format fmt) {
    if (fmt == Format::pretty) std::cout << doc.dump(2) << "\n";
    else std::cout << doc.dump() << "\n";
}

json manifest(const std::string& command, json config) {
    config["deterministic"] = true;
    return json{{"command", command}, {"config", std::move(config)}};
}

// (n, value) table commands share this emitter
int emit_table(const std::string& command, json config, Format fmt,
               const std::vector<std::pair<std::int64_t, std::string>>& rows) {
    if (fmt == Format::csv) {
        json doc = manifest(command, std::move(config));
        std::cout << "# command=" << command << "\n";
        for (auto& [k, v] : doc["config"].items())
            std::cout << "# " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        std::cout << "n,value\n";
        for (const auto& [n, v] : rows) std::cout << n << "," << v << "\n";
        return 0;
    }
    json doc = manifest(command, std::move(config));
    json values = json::array();
    for (const auto& [n, v] : rows) values.push_back({{"n", n}, {"value", v}});
    doc["result"] = std::move(values);
    emit(doc, fmt);
    return 0;
}

struct RunAllOutcome {
    json lines = json::array();
    bool ok = true;

    void add(const std::string& name, bool pass, json detail = {}) {
        json line{{"check", name}, {"verdict", pass ? "pass" : "FAIL"}};
        if (!detail.is_null() && !detail.empty()) line["detail"] = std::move(detail);
        lines.push_back(std::move(line));
        ok = ok && pass;
    }
};

// The acceptance-criteria composition at a profile's scale. smoke: 200-term
// identities; full: the spec-scale 2000-term run.
RunAllOutcome run_all(bool full) {
    RunAllOutcome out;
    const std::int64_t T = full ? 2000 : 200;

    for (const auto* spec : {"chi12", "chi24", "chi2", "chi-4", "chi-3", "chi-8", "kronecker:5"}) {
        IdentityReport rep = verify_pihol_vanishing(DirichletCharacter::parse(spec), T);
        out.add("pihol-vanishing " + std::string(spec), rep.equal, to_json(rep));
    }
    out.add("spt-identity chi12", verify_spt_identity(SptVariant::chi12, T).equal);
    out.add("spt-identity chi24", verify_spt_identity(SptVariant::chi24, T).equal);
    {
        auto spt = spt_values(60);
        bool ok = true;
        for (int n = 1; n <= 60 && ok; ++n) ok = spt[static_cast<std::size_t>(n)] == spt_enumeration(n);
        out.add("spt series vs enumeration oracle (n <= 60)", ok);
    }
    out.add("cpt-identity chi2", verify_cpt_identity(T).equal);
    {
        auto cpt = cpt_values(200);
        bool ok = true;
        for (std::int64_t n = 1; n <= 200 && ok; ++n)
            ok = cpt[static_cast<std::size_t>(n)] == cpt_enumeration(n);
        out.add("cpt series vs run enumeration (n <= 200)", ok);
    }
    out.add("f22-identity chi-4", verify_f22_identity(T / 8).equal);

    for (std::int64_t D : {-8, -4, -3, 8, 12, 24}) {
        DirichletCharacter chi = DirichletCharacter::kronecker(D);
        Rational w = chi.parity() == 0 ? Rational(1, 2) : Rational(3, 2);
        std::int64_t f = chi.modulus();
        std::int64_t M = T / 2;
        EtaMatchResult m = eta_match(theta_psi(chi, M + 2500), 4 * f * f, w, 10, M);
        out.add("eta-match D=" + std::to_string(D), m.found, to_json(m));
    }
    for (std::int64_t D : {5, -7}) {
        DirichletCharacter chi = DirichletCharacter::kronecker(D);
        Rational w = chi.parity() == 0 ? Rational(1, 2) : Rational(3, 2);
        std::int64_t f = chi.modulus();
        EtaMatchResult m = eta_match(theta_psi(chi, T / 2 + 2500), 4 * f * f, w, 10, T / 2);
        out.add("eta-match no-match D=" + std::to_string(D), !m.found);
    }

    const std::int64_t Tc = T / 4;
    for (const auto* spec : {"chi12", "chi2"}) {
        DirichletCharacter psi = DirichletCharacter::parse(spec);
        for (std::int64_t p : {5, 7, 11}) {
            for (std::int64_t a : {1, 2}) {
                for (std::int64_t b : {1, 2}) {
                    std::string tag = std::string(spec) + " p=" + std::to_string(p) +
                                      " a=" + std::to_string(a) + " b=" + std::to_string(b);
                    CongruenceReport fc = check_divisor_forcing(psi, p, a, b, Tc);
                    out.add("divisor-forcing " + tag, fc.holds, to_json(fc));
                    CongruenceReport tc = check_theorem_congruence(psi, p, a, b, Tc);
                    out.add("theorem-congruence " + tag, tc.holds, to_json(tc));
                }
            }
        }
    }

    out.add("andrews-congruences", check_andrews_congruences(T).all_hold);
    return out;
}

DirichletCharacter character_or_usage(const std::string& spec) {
    try {
        return DirichletCharacter::parse(spec);
    } catch (const std::exception& e) {
        throw CLI::ValidationError("--char", e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmock: exact q-series engine for mock Eisenstein identities"};
    app.require_subcommand(1);

    std::string char_spec, format_name = "json", variant_name = "divisor", profile;
    std::int64_t upto = 0, terms = 0, p = 0, a = 1, b = 1, bound = 10, k = 0;

    auto* cmd_sigma = app.add_subcommand("sigma-sm", "twisted small-divisor sums");
    cmd_sigma->add_option("--char", char_spec)->required();
    cmd_sigma->add_option("--upto", upto)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_sigma->add_option("--format", format_name);

    auto* cmd_spt = app.add_subcommand("spt", "smallest-parts counts");
    cmd_spt->add_option("--upto", upto)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_spt->add_option("--format", format_name);

    auto* cmd_cpt = app.add_subcommand("cpt", "consecutive-parts counts");
    cmd_cpt->add_option("--upto", upto)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_cpt->add_option("--format", format_name);

    auto* cmd_theta = app.add_subcommand("theta", "Shimura theta expansion");
    cmd_theta->add_option("--char", char_spec)->required();
    cmd_theta->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_theta->add_option("--format", format_name);

    auto* cmd_eis = app.add_subcommand("eisenstein", "E2, G_k and twisted Eisenstein expansions");
    cmd_eis->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_eis->add_option("--k", k);
    cmd_eis->add_option("--char", char_spec);
    cmd_eis->add_option("--variant", variant_name)->check(CLI::IsMember({"divisor", "codivisor"}));
    cmd_eis->add_option("--format", format_name);

    auto* cmd_match = app.add_subcommand("eta-match", "identify a theta function as an eta quotient");
    cmd_match->add_option("--char", char_spec)->required();
    cmd_match->add_option("--bound", bound)->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_match->add_option("--terms", terms)->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_match->add_option("--format", format_name);

    auto* cmd_coeffs = app.add_subcommand("mockeis-coeffs", "mock Eisenstein series coefficients");
    cmd_coeffs->add_option("--char", char_spec)->required();
    cmd_coeffs->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_coeffs->add_option("--format", format_name);

    auto* cmd_verify = app.add_subcommand("verify", "coefficientwise identity checks");
    cmd_verify->require_subcommand(1);
    auto* v_pihol = cmd_verify->add_subcommand("pihol", "sigma^sm equals the correction enumeration");
    v_pihol->add_option("--char", char_spec)->required();
    v_pihol->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    v_pihol->add_option("--format", format_name);
    auto* v_spt = cmd_verify->add_subcommand("spt", "Corollary identity for spt (chi12)");
    v_spt->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    v_spt->add_option("--format", format_name);
    auto* v_spt24 = cmd_verify->add_subcommand("spt24", "Corollary identity for spt with the (-1)^n twist");
    v_spt24->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    v_spt24->add_option("--format", format_name);
    auto* v_cpt = cmd_verify->add_subcommand("cpt", "Corollary identity for cpt (chi2)");
    v_cpt->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    v_cpt->add_option("--format", format_name);
    auto* v_f22 = cmd_verify->add_subcommand("f22", "half-integer lattice double-sum identity");
    v_f22->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    v_f22->add_option("--format", format_name);

    auto* cmd_cong = app.add_subcommand("congruence", "U(p^b) congruence certificates");
    cmd_cong->add_option("--char", char_spec)->required();
    cmd_cong->add_option("--p", p)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_cong->add_option("--a", a)->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_cong->add_option("--b", b)->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_cong->add_option("--terms", terms)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_cong->add_option("--format", format_name);

    auto* cmd_andrews = app.add_subcommand("andrews", "Andrews spt congruences");
    cmd_andrews->add_option("--upto", upto)->required()->check(CLI::Range(std::int64_t(1), std::int64_t(1) << 40));
    cmd_andrews->add_option("--format", format_name);

    auto* cmd_all = app.add_subcommand("run-all", "aggregate verification suite");
    cmd_all->add_option("--profile", profile)->required()->check(CLI::IsMember({"smoke", "full"}));
    cmd_all->add_option("--format", format_name);

    try {
        app.parse(argc, argv);

        Format fmt = parse_format(format_name);
        auto csv_unsupported = [&] {
            if (fmt == Format::csv)
                throw CLI::ValidationError("--format", "csv applies only to table commands");
        };

        if (*cmd_sigma) {
            DirichletCharacter psi = character_or_usage(char_spec);
            FracSeries s = sigma_sm_series(psi, upto + 1);
            std::vector<std::pair<std::int64_t, std::string>> rows;
            for (std::int64_t n = 1; n <= upto; ++n)
                rows.emplace_back(n, s.coeff_at_integer(n).to_string());
            return emit_table("sigma-sm", {{"char", char_spec}, {"upto", upto}}, fmt, rows);
        }
        if (*cmd_spt) {
            auto vals = spt_values(upto);
            std::vector<std::pair<std::int64_t, std::string>> rows;
            for (std::int64_t n = 1; n <= upto; ++n)
                rows.emplace_back(n, vals[static_cast<std::size_t>(n)].get_str());
            return emit_table("spt", {{"upto", upto}}, fmt, rows);
        }
        if (*cmd_cpt) {
            auto vals = cpt_values(upto);
            std::vector<std::pair<std::int64_t, std::string>> rows;
            for (std::int64_t n = 1; n <= upto; ++n)
                rows.emplace_back(n, vals[static_cast<std::size_t>(n)].get_str());
            return emit_table("cpt", {{"upto", upto}}, fmt, rows);
        }
        if (*cmd_theta) {
            csv_unsupported();
            DirichletCharacter psi = character_or_usage(char_spec);
            ThetaSpec spec = theta_spec(psi);
            json doc = manifest("theta", {{"char", char_spec}, {"terms", terms}});
            doc["result"] = {
                {"weight", spec.weight.to_string()},
                {"level", spec.level},
                {"nebentypus", spec.nebentypus},
                {"series", to_json(theta_psi(psi, terms + 1))},
            };
            emit(doc, fmt);
            return 0;
        }
        if (*cmd_eis) {
            csv_unsupported();
            json config{{"terms", terms}};
            FracSeries series = [&] {
                if (k == 0 && char_spec.empty()) return eisenstein_e2(terms + 1);
                if (char_spec.empty()) {
                    config["k"] = k;
                    return eisenstein_gk(static_cast<unsigned>(k), terms + 1);
                }
                if (k == 0) throw CLI::ValidationError("--k", "required when --char is given");
                config["k"] = k;
                config["char"] = char_spec;
                config["variant"] = variant_name;
                return eisenstein_gk_chi(static_cast<unsigned>(k), character_or_usage(char_spec),
                                         variant_name == "divisor" ? EisensteinTwist::divisor
                                                                   : EisensteinTwist::codivisor,
                                         terms + 1);
            }();
            json doc = manifest("eisenstein", std::move(config));
            doc["result"] = to_json(series);
            emit(doc, fmt);
            return 0;
        }
        if (*cmd_match) {
            csv_unsupported();
            if (terms == 0) terms = 500;
            DirichletCharacter psi = character_or_usage(char_spec);
            ThetaSpec spec = theta_spec(psi);
            FracSeries target = theta_psi(psi, terms + std::min<std::int64_t>(spec.level, 2400) + 2);
            EtaMatchResult m = eta_match(target, spec.level, spec.weight, bound, terms);
            json doc = manifest("eta-match", {{"char", char_spec},
                                              {"bound", bound},
                                              {"terms", terms},
                                              {"level", spec.level},
                                              {"weight", spec.weight.to_string()}});
            doc["result"] = to_json(m);
            emit(doc, fmt);
            return m.found ? 0 : 1;
        }
        if (*cmd_coeffs) {
            csv_unsupported();
            DirichletCharacter psi = character_or_usage(char_spec);
            json doc = manifest("mockeis-coeffs", {{"char", char_spec}, {"terms", terms}});
            doc["result"] = to_json(mock_eisenstein_plus(psi, terms + 2));
            emit(doc, fmt);
            return 0;
        }
        if (*cmd_verify) {
            csv_unsupported();
            IdentityReport rep;
            json config{{"terms", terms}};
            if (*v_pihol) {
                config["char"] = char_spec;
                rep = verify_pihol_vanishing(character_or_usage(char_spec), terms + 1);
            } else if (*v_spt) {
                rep = verify_spt_identity(SptVariant::chi12, terms + 1);
            } else if (*v_spt24) {
                rep = verify_spt_identity(SptVariant::chi24, terms + 1);
            } else if (*v_cpt) {
                rep = verify_cpt_identity(terms + 1);
            } else {
                rep = verify_f22_identity(terms);
            }
            json doc = manifest("verify", std::move(config));
            doc["result"] = to_json(rep);
            emit(doc, fmt);
            return rep.equal ? 0 : 1;
        }
        if (*cmd_cong) {
            csv_unsupported();
            DirichletCharacter psi = character_or_usage(char_spec);
            CongruenceReport forcing = check_divisor_forcing(psi, p, a, b, terms);
            CongruenceReport theorem = check_theorem_congruence(psi, p, a, b, terms);
            json doc = manifest("congruence", {{"char", char_spec},
                                               {"p", p},
                                               {"a", a},
                                               {"b", b},
                                               {"terms", terms}});
            doc["result"] = {{"divisor_forcing", to_json(forcing)}, {"theorem", to_json(theorem)}};
            emit(doc, fmt);
            return (forcing.holds && theorem.holds) ? 0 : 1;
        }
        if (*cmd_andrews) {
            csv_unsupported();
            AndrewsReport rep = check_andrews_congruences(upto);
            json doc = manifest("andrews", {{"upto", upto}});
            doc["result"] = to_json(rep);
            emit(doc, fmt);
            return rep.all_hold ? 0 : 1;
        }
        if (*cmd_all) {
            csv_unsupported();
            RunAllOutcome outcome = run_all(profile == "full");
            json doc = manifest("run-all", {{"profile", profile}});
            doc["result"] = {{"verdict", outcome.ok ? "pass" : "FAIL"}, {"checks", outcome.lines}};
            emit(doc, fmt);
            return outcome.ok ? 0 : 1;
        }
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
