#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "maxplus/errors.hpp"
#include "maxplus/model_io.hpp"
#include "maxplus/pteg.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;

struct Request {
    std::string command;
    std::string path;
    bool json_out = false;
    std::string digest;
    maxplus::ModelFile model;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw maxplus::ParseError("cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Request load(const std::string& command, const std::string& path, bool json_out) {
    Request r;
    r.command = command;
    r.path = path;
    r.json_out = json_out;
    std::string bytes = read_file(path);
    r.digest = maxplus::fnv1a_digest(bytes);
    r.model = maxplus::parse_model(bytes);
    return r;
}

json interval_json(const maxplus::FeasibleSet& s) {
    json out;
    out["empty"] = s.is_empty();
    out["lo"] = nullptr;
    out["hi"] = nullptr;
    if (!s.is_empty() && !s.lo_unbounded()) {
        out["lo"] = maxplus::rat_str(s.lo());
    }
    if (!s.is_empty() && !s.hi_unbounded()) {
        out["hi"] = maxplus::rat_str(s.hi());
    }
    out["str"] = s.str();
    return out;
}

json envelope_json(const Request& r, json result) {
    json out;
    out["command"] = r.command;
    out["input"] = r.path;
    out["digest"] = r.digest;
    out["result"] = std::move(result);
    return out;
}

void print_envelope_header(const Request& r) {
    std::cout << "command: " << r.command << "\n";
    std::cout << "input: " << r.path << "\n";
    std::cout << "digest: " << r.digest << "\n";
}

std::string vector_str(const std::vector<maxplus::Rat>& xs) {
    std::string out = "[";
    for (size_t k = 0; k < xs.size(); ++k) {
        out += maxplus::rat_str(xs[k]);
        if (k + 1 < xs.size()) {
            out += ", ";
        }
    }
    return out + "]";
}

std::vector<std::string> json_vector(const std::vector<maxplus::Rat>& xs) {
    std::vector<std::string> out;
    out.reserve(xs.size());
    for (const maxplus::Rat& x : xs) {
        out.push_back(maxplus::rat_str(x));
    }
    return out;
}

int run_check(const Request& r) {
    maxplus::Normalization norm = maxplus::normalize(r.model.spec);
    maxplus::FeasibleSet lambda1 = maxplus::period_set(norm.graph, 1);
    bool consistent = !lambda1.is_empty();
    if (r.json_out) {
        json result;
        result["boundedly_consistent"] = consistent;
        result["lambda_1"] = interval_json(lambda1);
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else {
        print_envelope_header(r);
        std::cout << "boundedly consistent: " << (consistent ? "true" : "false") << "\n";
        std::cout << "Lambda_1: " << lambda1.str() << "\n";
    }
    return kExitOk;
}

int run_periods(const Request& r, int d, const std::string& mode) {
    maxplus::Normalization norm = maxplus::normalize(r.model.spec);
    maxplus::PeriodMode period_mode =
        mode == "tensor" ? maxplus::PeriodMode::tensor : maxplus::PeriodMode::theorem2;
    maxplus::FeasibleSet set = maxplus::period_set(norm.graph, d, period_mode);
    std::optional<bool> agrees;
    if (period_mode == maxplus::PeriodMode::tensor) {
        agrees = set == maxplus::period_set(norm.graph, 1);
    }
    if (r.json_out) {
        json result;
        result["d"] = d;
        result["mode"] = mode;
        result["period_set"] = interval_json(set);
        if (agrees) {
            result["agrees_with_d1"] = *agrees;
        }
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else {
        print_envelope_header(r);
        std::cout << "d: " << d << "\n";
        std::cout << "mode: " << mode << "\n";
        std::cout << "period set: " << set.str() << "\n";
        if (agrees) {
            std::cout << "agrees with d=1: " << (*agrees ? "yes" : "no") << "\n";
        }
    }
    return kExitOk;
}

int run_trajectory(const Request& r, int d, const std::string& lambda_text,
                   const std::string& u_spec, long horizon) {
    maxplus::Normalization norm = maxplus::normalize(r.model.spec);
    maxplus::Rat lambda = maxplus::parse_rational(lambda_text);
    const int dn = d * norm.graph.n;
    std::vector<maxplus::Rat> u(dn, maxplus::Rat(0));
    if (u_spec != "zero") {
        std::istringstream in(read_file(u_spec));
        std::string token;
        std::vector<maxplus::Rat> parsed;
        while (in >> token) {
            parsed.push_back(maxplus::parse_rational(token));
        }
        if (static_cast<int>(parsed.size()) != dn) {
            throw maxplus::ParseError("'" + u_spec + "': expected " + std::to_string(dn) +
                                      " entries, found " + std::to_string(parsed.size()));
        }
        u = std::move(parsed);
    }
    if (horizon < 0) {
        horizon = 3L * d;
    }

    std::optional<maxplus::Trajectory> trajectory;
    try {
        trajectory = maxplus::synthesize(norm.graph, d, lambda, u);
    } catch (const maxplus::PositiveCircuitError& e) {
        if (r.json_out) {
            json result;
            result["error"] = "lambda outside the period set";
            result["lambda"] = maxplus::rat_str(lambda);
            result["witness_circuit"] = maxplus::Circuit{e.nodes()}.str();
            result["witness_weight"] = maxplus::rat_str(e.weight());
            std::cout << envelope_json(r, result).dump(2) << "\n";
        } else {
            std::cerr << "error: lambda " << maxplus::rat_str(lambda)
                      << " is not an admissible period for d=" << d << "\n";
            std::cerr << "witness circuit: " << maxplus::Circuit{e.nodes()}.str() << " (weight "
                      << maxplus::rat_str(e.weight()) << ")\n";
        }
        return kExitInfeasible;
    }

    maxplus::TrajectoryReport report =
        maxplus::validate_trajectory(norm.graph, *trajectory, horizon);
    long emit_to = std::max<long>(horizon, d - 1);
    if (r.json_out) {
        json result;
        result["d"] = d;
        result["lambda"] = maxplus::rat_str(lambda);
        json xs = json::array();
        for (long k = 0; k <= emit_to; ++k) {
            xs.push_back(json_vector(trajectory->at(k)));
        }
        result["x"] = std::move(xs);
        result["validation"]["pass"] = report.pass();
        result["validation"]["horizon"] = horizon;
        json violations = json::array();
        for (const auto& v : report.violations) {
            violations.push_back(
                {{"k", v.k}, {"constraint", v.constraint}, {"i", v.i + 1}, {"j", v.j + 1}});
        }
        result["validation"]["violations"] = std::move(violations);
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else {
        print_envelope_header(r);
        std::cout << "d: " << d << "\n";
        std::cout << "lambda: " << maxplus::rat_str(lambda) << "\n";
        for (long k = 0; k <= emit_to; ++k) {
            std::cout << "x(" << k << "): " << vector_str(trajectory->at(k)) << "\n";
        }
        if (report.pass()) {
            std::cout << "validation: pass (horizon " << horizon << ")\n";
        } else {
            std::cout << "validation: fail\n";
            for (const auto& v : report.violations) {
                std::cout << "violation: k=" << v.k << " constraint=" << v.constraint
                          << " i=" << v.i + 1 << " j=" << v.j + 1 << "\n";
            }
        }
    }
    return report.pass() ? kExitOk : kExitInternal;
}

int run_validate(const Request& r) {
    std::vector<maxplus::Diagnostic> diagnostics = maxplus::validate_spec(r.model.spec);
    if (r.json_out) {
        json result;
        result["valid"] = diagnostics.empty();
        json list = json::array();
        for (const auto& diag : diagnostics) {
            list.push_back({{"place", diag.place + 1}, {"message", diag.message}});
        }
        result["diagnostics"] = std::move(list);
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else {
        print_envelope_header(r);
        std::cout << "valid: " << (diagnostics.empty() ? "true" : "false") << "\n";
        for (const auto& diag : diagnostics) {
            std::cout << "diagnostic:";
            if (diag.place >= 0) {
                std::cout << " place " << diag.place + 1 << ":";
            }
            std::cout << " " << diag.message << "\n";
        }
    }
    return diagnostics.empty() ? kExitOk : kExitInput;
}

int run_export_dot(const Request& r, bool parametric, const std::string& lambda_text) {
    maxplus::Normalization norm = maxplus::normalize(r.model.spec);
    maxplus::PicTriple pic = maxplus::pic_reduction(norm.graph);
    std::string dot;
    if (parametric) {
        dot = maxplus::ParamGraph::from_pic(pic.p, pic.i, pic.c).to_dot();
    } else {
        maxplus::Rat lambda = maxplus::parse_rational(lambda_text);
        dot = maxplus::PrecGraph::from_matrix(maxplus::eval_pic(pic.p, pic.i, pic.c, lambda))
                  .to_dot();
    }
    if (r.json_out) {
        json result;
        result["dot"] = dot;
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else {
        std::cout << dot;
    }
    return kExitOk;
}

int run_normalize(const Request& r, const std::string& out_path) {
    maxplus::Normalization norm = maxplus::normalize(r.model.spec);
    long n_bar = norm.spec.transition_count();
    std::string text = maxplus::emit_model(norm.spec);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            throw maxplus::ParseError("cannot write '" + out_path + "'");
        }
        out << text;
    }
    if (r.json_out) {
        json result;
        result["n_bar"] = n_bar;
        result["model"] = text;
        if (!out_path.empty()) {
            result["output"] = out_path;
        }
        std::cout << envelope_json(r, result).dump(2) << "\n";
    } else if (!out_path.empty()) {
        print_envelope_header(r);
        std::cout << "n-bar: " << n_bar << "\n";
        std::cout << "output: " << out_path << "\n";
    } else {
        std::cout << "# command: " << r.command << "\n";
        std::cout << "# input: " << r.path << "\n";
        std::cout << "# digest: " << r.digest << "\n";
        std::cout << "# n-bar: " << n_bar << "\n";
        std::cout << text;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact max-plus period analysis of P-time event graphs"};
    app.require_subcommand(1);

    std::string path;
    bool json_out = false;
    int d = 1;
    std::string mode = "theorem2";
    std::string lambda_text;
    std::string u_spec = "zero";
    long horizon = -1;
    bool parametric = false;
    std::string out_path;

    CLI::App* check = app.add_subcommand("check", "decide bounded consistency");
    check->add_option("model", path, "model file")->required();
    check->add_flag("--json", json_out, "machine-readable envelope");

    CLI::App* periods = app.add_subcommand("periods", "compute the admissible period set");
    periods->add_option("model", path, "model file")->required();
    periods->add_option("--d", d, "trajectory periodicity")->check(CLI::PositiveNumber);
    periods->add_option("--mode", mode, "theorem2 (n x n) or tensor (dn x dn)")
        ->check(CLI::IsMember({"theorem2", "tensor"}));
    periods->add_flag("--json", json_out, "machine-readable envelope");

    CLI::App* trajectory = app.add_subcommand("trajectory", "synthesize a d-periodic trajectory");
    trajectory->add_option("model", path, "model file")->required();
    trajectory->add_option("--d", d, "trajectory periodicity")->check(CLI::PositiveNumber);
    trajectory->add_option("--lambda", lambda_text, "period (exact rational)")->required();
    trajectory->add_option("--u", u_spec, "'zero' or a file of d*n rationals");
    trajectory->add_option("--horizon", horizon, "validation horizon K (default 3d)")
        ->check(CLI::NonNegativeNumber);
    trajectory->add_flag("--json", json_out, "machine-readable envelope");

    CLI::App* validate = app.add_subcommand("validate", "check model structure and intervals");
    validate->add_option("model", path, "model file")->required();
    validate->add_flag("--json", json_out, "machine-readable envelope");

    CLI::App* export_dot = app.add_subcommand("export-dot", "precedence graph in DOT form");
    export_dot->add_option("model", path, "model file")->required();
    CLI::Option* opt_param = export_dot->add_flag("--parametric", parametric, "envelope labels");
    export_dot->add_option("--lambda", lambda_text, "evaluate arcs at this period")
        ->excludes(opt_param);
    export_dot->add_flag("--json", json_out, "machine-readable envelope");

    CLI::App* norm_cmd = app.add_subcommand("normalize", "rewrite markings to 0/1");
    norm_cmd->add_option("model", path, "model file")->required();
    norm_cmd->add_option("-o,--output", out_path, "write the normalized model here");
    norm_cmd->add_flag("--json", json_out, "machine-readable envelope");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (check->parsed()) {
            return run_check(load("check", path, json_out));
        }
        if (periods->parsed()) {
            return run_periods(load("periods", path, json_out), d, mode);
        }
        if (trajectory->parsed()) {
            return run_trajectory(load("trajectory", path, json_out), d, lambda_text, u_spec,
                                  horizon);
        }
        if (validate->parsed()) {
            return run_validate(load("validate", path, json_out));
        }
        if (export_dot->parsed()) {
            return run_export_dot(load("export-dot", path, json_out),
                                  parametric || lambda_text.empty(), lambda_text);
        }
        if (norm_cmd->parsed()) {
            return run_normalize(load("normalize", path, json_out), out_path);
        }
    } catch (const maxplus::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const maxplus::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
