// Copyright 2026 The cnrqo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cnr/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <functional>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "cnr/cnr_circuit.hpp"
#include "cnr/cost_model.hpp"
#include "cnr/emulator.hpp"
#include "cnr/errors.hpp"
#include "cnr/generators.hpp"
#include "cnr/instance_io.hpp"
#include "cnr/metrics.hpp"
#include "cnr/qpe_model.hpp"
#include "cnr/recursion.hpp"
#include "cnr/report.hpp"
#include "cnr/rng.hpp"

namespace cnr {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    // Honour SOURCE_DATE_EPOCH so bundles can be made byte-reproducible.
    if (const char *fixed = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(fixed, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Collects artifacts; writes them plus a manifest under --out, otherwise
/// prints the primary artifact.
class Output {
  public:
    Output(std::string command, std::string out_dir, std::ostream &out)
        : out_dir_(std::move(out_dir)), out_(out) {
        manifest_["schema"] = kManifestSchema;
        manifest_["command"] = std::move(command);
        manifest_["tool_version"] = kToolVersion;
        manifest_["timestamp"] = utc_timestamp();
        manifest_["rng"] = Rng::kName;
        manifest_["instance"] = nullptr;
        manifest_["config"] = ojson::object();
        manifest_["outputs"] = ojson::array();
    }

    void set_instance(const std::string &path) {
        ojson j;
        j["path"] = path;
        j["sha256"] = sha256_hex(read_file(path));
        manifest_["instance"] = j;
    }

    void set_spectrum_file(const std::string &path) {
        ojson j;
        j["path"] = path;
        j["sha256"] = sha256_hex(read_file(path));
        manifest_["spectrum"] = j;
    }

    ojson &config() { return manifest_["config"]; }

    void add(const std::string &name, const std::string &schema,
             std::string contents, bool primary) {
        files_.push_back({name, schema, std::move(contents), primary});
    }

    void flush() {
        if (out_dir_.empty()) {
            for (const File &f : files_) {
                if (f.primary) {
                    out_ << f.contents;
                }
            }
            return;
        }
        const fs::path dir(out_dir_);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) {
            throw ArgumentError("cannot create output directory '" +
                                out_dir_ + "': " + ec.message());
        }
        for (const File &f : files_) {
            write_file_atomic(dir / f.name, f.contents);
            ojson entry;
            entry["file"] = f.name;
            entry["schema"] = f.schema;
            entry["sha256"] = sha256_hex(f.contents);
            manifest_["outputs"].push_back(entry);
        }
        write_file_atomic(dir / "manifest.json", manifest_.dump(2) + "\n");
    }

  private:
    struct File {
        std::string name;
        std::string schema;
        std::string contents;
        bool primary;
    };

    std::string out_dir_;
    std::ostream &out_;
    ojson manifest_;
    std::vector<File> files_;
};

struct SourceArgs {
    std::string instance;
    std::string spectrum;
    double tol = kDefaultLevelTolerance;
};

void add_source(CLI::App *cmd, SourceArgs &src, bool allow_spectrum) {
    if (allow_spectrum) {
        auto *group = cmd->add_option_group("source", "exactly one of");
        group->add_option("--instance", src.instance, "instance JSON file");
        group->add_option("--spectrum", src.spectrum,
                          "stored spectrum JSON file");
        group->require_option(1);
    } else {
        cmd->add_option("--instance", src.instance, "instance JSON file")
            ->required();
    }
    cmd->add_option("--tol", src.tol,
                    "relative level-grouping tolerance")
        ->capture_default_str();
}

struct Loaded {
    std::optional<ProblemInstance> inst;
    EnergySpectrum spec;
};

Loaded load_source(const SourceArgs &src, Output &output) {
    if (!src.instance.empty()) {
        output.set_instance(src.instance);
        ProblemInstance inst = load_instance(src.instance);
        EnergySpectrum spec = enumerate_spectrum(inst, src.tol);
        return {std::move(inst), std::move(spec)};
    }
    if (!src.spectrum.empty()) {
        output.set_spectrum_file(src.spectrum);
        return {std::nullopt, load_spectrum(src.spectrum)};
    }
    throw ArgumentError("one of --instance or --spectrum is required");
}

struct BetaArgs {
    std::optional<int> beta;
    double eps = 0.2;
};

void add_beta(CLI::App *cmd, BetaArgs &b) {
    cmd->add_option("--beta", b.beta,
                    "neighborhood size (default: from --eps)");
    cmd->add_option("--eps", b.eps, "worst relative error eps_R")
        ->capture_default_str();
}

int resolve_beta(const BetaArgs &b, const EnergySpectrum &spec,
                 ojson &config) {
    const int beta = b.beta ? *b.beta : beta_from_true_energies(spec, b.eps);
    config["eps_r"] = b.eps;
    config["beta"] = beta;
    config["beta_source"] = b.beta ? "given" : "true energies";
    return beta;
}

struct Neighborhood {
    std::string label;
    int beta;
};

/// The given beta, or both the bound-line and the true-energy choices.
std::vector<Neighborhood> neighborhoods(const BetaArgs &b,
                                        const EnergySpectrum &spec,
                                        ojson &config) {
    config["eps_r"] = b.eps;
    std::vector<Neighborhood> out;
    if (b.beta) {
        out.push_back({"given", *b.beta});
    } else {
        if (spec.num_levels() >= 2) {
            out.push_back({"bound_line", beta_upper_bound(spec, b.eps)});
        }
        out.push_back({"true_energies", beta_from_true_energies(spec, b.eps)});
    }
    ojson j = ojson::object();
    for (const Neighborhood &nb : out) {
        j[nb.label] = nb.beta;
    }
    config["beta"] = j;
    return out;
}

struct QpeArgs {
    int t = 7;
    std::string scale;
    std::optional<double> accuracy;
};

void add_qpe(CLI::App *cmd, QpeArgs &q) {
    cmd->add_option("--t", q.t, "ancilla qubits")->capture_default_str();
    cmd->add_option("--M", q.scale,
                    "scale factor, decimal or e.g. 45/2pi");
    cmd->add_option("--b", q.accuracy,
                    "comparison accuracy (default 2^-(t-2))");
}

CnrConfig make_config(const QpeArgs &q, ojson &config) {
    if (q.scale.empty()) {
        throw ArgumentError("--M is required for phase-estimation runs");
    }
    CnrConfig c{q.t, parse_scale(q.scale),
                q.accuracy ? *q.accuracy : std::ldexp(1.0, 2 - q.t)};
    c.check();
    config["t"] = c.t;
    config["M"] = c.scale;
    config["M_text"] = q.scale;
    config["b"] = c.accuracy;
    return c;
}

std::string join_args(const std::vector<std::string> &args) {
    std::string s = "cnrqo";
    for (const std::string &a : args) {
        s += ' ' + a;
    }
    return s;
}

ojson depths_json(const std::vector<int> &depths) {
    ojson j = ojson::array();
    for (int p : depths) {
        j.push_back(p);
    }
    return j;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"CNR-based quantum approximate optimization toolkit",
                 "cnrqo"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);
    std::string out_dir;
    app.add_option("--out", out_dir, "write artifacts and manifest here");

    std::function<void(Output &)> action;

    // generate
    std::string family;
    int gen_n = 0;
    std::optional<double> density;
    std::uint64_t seed = 0;
    auto *gen = app.add_subcommand("generate", "random problem instance");
    gen->add_option("--family", family, "gaussian or max2xor")->required();
    gen->add_option("--n", gen_n, "number of bits")->required();
    gen->add_option("--density", density, "edge density (max2xor)");
    gen->add_option("--seed", seed, "64-bit seed")->required();
    gen->callback([&] {
        action = [&](Output &o) {
            const GeneratorSpec spec{parse_family(family), gen_n, density,
                                     seed};
            o.config()["family"] = to_string(spec.family);
            o.config()["n"] = spec.n;
            o.config()["density"] =
                density ? ojson(*density) : ojson(nullptr);
            o.config()["seed"] = seed;
            o.add("instance.json", "cnrqo-instance/1",
                  dump_instance(generate(spec)), true);
        };
    });

    // spectrum
    SourceArgs spec_src;
    auto *spec_cmd =
        app.add_subcommand("spectrum", "enumerate the energy spectrum");
    add_source(spec_cmd, spec_src, false);
    spec_cmd->callback([&] {
        action = [&](Output &o) {
            const Loaded l = load_source(spec_src, o);
            o.config()["tol"] = spec_src.tol;
            o.add("spectrum.csv", "cnrqo-spectrum/1",
                  spectrum_scatter_csv(*l.inst, l.spec), true);
            o.add("spectrum.json", "cnrqo-spectrum-json/1",
                  spectrum_to_json(l.spec).dump(2) + "\n", false);
        };
    });

    // recurse
    SourceArgs rec_src;
    std::string rec_p = "0..9";
    auto *rec = app.add_subcommand("recurse",
                                   "closed-form level distributions");
    add_source(rec, rec_src, true);
    rec->add_option("--p", rec_p, "depths, e.g. 4..9 or 1,3")
        ->capture_default_str();
    rec->callback([&] {
        action = [&](Output &o) {
            const Loaded l = load_source(rec_src, o);
            const std::vector<int> depths = parse_depths(rec_p);
            o.config()["p"] = depths_json(depths);
            o.add("levels.csv", "cnrqo-levels/1",
                  level_distribution_csv(l.spec, depths), true);
        };
    });

    // bounds
    SourceArgs bnd_src;
    BetaArgs bnd_beta;
    std::string bnd_p = "4..9";
    auto *bnd = app.add_subcommand(
        "bounds", "neighborhood metrics and bound-line construction");
    add_source(bnd, bnd_src, true);
    add_beta(bnd, bnd_beta);
    bnd->add_option("--p", bnd_p, "depths")->capture_default_str();
    std::optional<double> bnd_eta;
    bnd->add_option("--eta", bnd_eta, "target cumulative probability");
    bnd->callback([&] {
        action = [&](Output &o) {
            const Loaded l = load_source(bnd_src, o);
            const std::vector<int> depths = parse_depths(bnd_p);
            o.config()["p"] = depths_json(depths);
            if (bnd_eta) {
                o.config()["eta"] = *bnd_eta;
            }
            ojson j;
            std::optional<BoundLines> lines;
            if (l.spec.num_levels() >= 2) {
                lines = bound_lines(l.spec, bnd_beta.eps);
                j["lines"] = bound_lines_json(*lines, bnd_beta.eps);
            }
            j["neighborhoods"] = ojson::array();
            for (const Neighborhood &nb :
                 neighborhoods(bnd_beta, l.spec, o.config())) {
                ojson e;
                e["neighborhood"] = nb.label;
                e["beta"] = nb.beta;
                e["a_beta"] = neighborhood_size(l.spec, nb.beta);
                if (bnd_eta) {
                    e["min_p"] = min_p_for(*bnd_eta, l.spec.num_bits(),
                                           neighborhood_size(l.spec, nb.beta));
                }
                e["rows"] = ojson::array();
                for (int p : depths) {
                    e["rows"].push_back(neighborhood_json(
                        neighborhood_report(l.spec, nb.beta, p)));
                }
                j["neighborhoods"].push_back(e);
            }
            o.add("bounds.json", "cnrqo-bounds/1", j.dump(2) + "\n", true);
            if (lines) {
                o.add("lines.csv", "cnrqo-lines/1",
                      bound_lines_csv(l.spec, *lines), false);
            }
        };
    });

    // simulate
    SourceArgs sim_src;
    QpeArgs sim_qpe;
    int sim_p = 1;
    bool exact_phase = false;
    bool exact_check = false;
    auto *sim = app.add_subcommand("simulate", "gate-level state vector run");
    add_source(sim, sim_src, false);
    add_qpe(sim, sim_qpe);
    sim->add_option("--p", sim_p, "tournament depth")->capture_default_str();
    sim->add_flag("--exact-phase", exact_phase,
                  "pick M so every Delta is an exact t-bit fraction");
    sim->add_flag("--exact-check", exact_check,
                  "compare with the closed-form recursion");
    sim->callback([&] {
        action = [&](Output &o) {
            const Loaded l = load_source(sim_src, o);
            if (exact_phase) {
                sim_qpe.scale = format_double(
                    exact_phase_scale(l.spec, sim_qpe.t));
            }
            const CnrConfig config = make_config(sim_qpe, o.config());
            o.config()["p"] = sim_p;
            const std::vector<double> dist =
                run_algorithm(*l.inst, config, sim_p);
            o.add("simulate.csv", "cnrqo-simulate/1",
                  simulate_csv(*l.inst, l.spec, dist), true);
            if (exact_check) {
                const double tv =
                    total_variation(t_marginal_levels(dist, l.spec),
                                    distribution_at(l.spec, sim_p));
                ojson j;
                j["total_variation"] = tv;
                o.add("check.json", "cnrqo-check/1", j.dump(2) + "\n", false);
                err << "total variation vs recursion: " << format_double(tv)
                    << '\n';
            }
        };
    });

    // emulate
    SourceArgs emu_src;
    QpeArgs emu_qpe;
    BetaArgs emu_beta;
    std::string emu_p = "4..9";
    std::string emu_samples = "1e6";
    std::string emu_mode = "ideal";
    std::uint64_t emu_seed = 0;
    unsigned emu_threads = 0;
    bool wrap_phase = false;
    auto *emu = app.add_subcommand("emulate", "Monte Carlo tournament");
    add_source(emu, emu_src, false);
    add_qpe(emu, emu_qpe);
    add_beta(emu, emu_beta);
    emu->add_option("--p", emu_p, "depths")->capture_default_str();
    emu->add_option("--samples", emu_samples, "samples per depth")
        ->capture_default_str();
    emu->add_option("--mode", emu_mode, "ideal or qpe")->capture_default_str();
    emu->add_option("--seed", emu_seed, "64-bit seed")->capture_default_str();
    emu->add_option("--threads", emu_threads, "worker threads (0 = auto)");
    emu->add_flag("--wrap-phase", wrap_phase,
                  "reduce out-of-range phases modulo 1 (qpe mode)");
    emu->callback([&] {
        action = [&](Output &o) {
            o.set_instance(emu_src.instance);
            const ProblemInstance inst = load_instance(emu_src.instance);
            EmulatorRun run;
            run.samples = parse_count(emu_samples);
            run.seed = emu_seed;
            run.mode = parse_mode(emu_mode);
            run.threads = emu_threads;
            run.wrap_phase = wrap_phase;
            o.config()["mode"] = to_string(run.mode);
            o.config()["samples"] = run.samples;
            o.config()["seed"] = run.seed;
            o.config()["wrap_phase"] = wrap_phase;
            if (run.mode == ComparisonMode::QpeSampled) {
                run.config = make_config(emu_qpe, o.config());
            }
            const std::vector<int> depths = parse_depths(emu_p);
            o.config()["p"] = depths_json(depths);
            if (inst.num_bits() <= kMaxEnumerationBits) {
                const EnergySpectrum spec = enumerate_spectrum(inst, emu_src.tol);
                const int beta = resolve_beta(emu_beta, spec, o.config());
                const std::vector<TableRow> rows =
                    table_report(inst, spec, run, depths, beta);
                o.add("emulate.csv", "cnrqo-emulate/1",
                      emulator_csv(rows, run, spec), true);
            } else {
                std::string csv = "p,energy,count,prob,se\n";
                for (int p : depths) {
                    run.p = p;
                    csv += survivors_csv(p, emulate(inst, run));
                }
                o.add("survivors.csv", "cnrqo-survivors/1", csv, true);
            }
        };
    });

    // report
    SourceArgs rep_src;
    BetaArgs rep_beta;
    QpeArgs rep_qpe;
    std::string rep_p = "4..9";
    bool rep_emulate = false;
    std::string rep_samples = "1e6";
    std::string rep_mode = "ideal";
    std::uint64_t rep_seed = 0;
    auto *rep = app.add_subcommand(
        "report", "table of neighborhood metrics per depth");
    add_source(rep, rep_src, true);
    add_beta(rep, rep_beta);
    add_qpe(rep, rep_qpe);
    rep->add_option("--p", rep_p, "depths")->capture_default_str();
    rep->add_flag("--emulate", rep_emulate, "join Monte Carlo columns");
    rep->add_option("--samples", rep_samples, "samples per depth")
        ->capture_default_str();
    rep->add_option("--mode", rep_mode, "ideal or qpe")->capture_default_str();
    rep->add_option("--seed", rep_seed, "64-bit seed")->capture_default_str();
    rep->callback([&] {
        action = [&](Output &o) {
            const Loaded l = load_source(rep_src, o);
            const std::vector<Neighborhood> hoods =
                neighborhoods(rep_beta, l.spec, o.config());
            const std::vector<int> depths = parse_depths(rep_p);
            o.config()["p"] = depths_json(depths);

            std::optional<EmulatorRun> run;
            if (rep_emulate) {
                if (!l.inst) {
                    throw ArgumentError("--emulate needs --instance");
                }
                run.emplace();
                run->samples = parse_count(rep_samples);
                run->seed = rep_seed;
                run->mode = parse_mode(rep_mode);
                o.config()["mode"] = to_string(run->mode);
                o.config()["samples"] = run->samples;
                o.config()["seed"] = run->seed;
                if (run->mode == ComparisonMode::QpeSampled) {
                    run->config = make_config(rep_qpe, o.config());
                }
            }
            // One emulation per depth serves every neighborhood.
            std::vector<std::optional<EmpiricalDistribution>> emp;
            for (int p : depths) {
                if (run) {
                    run->p = p;
                    emp.emplace_back(emulate(*l.inst, *run, &l.spec));
                } else {
                    emp.emplace_back(std::nullopt);
                }
            }

            std::vector<LabeledRow> rows;
            ojson j;
            j["rows"] = ojson::array();
            for (const Neighborhood &nb : hoods) {
                for (std::size_t k = 0; k < depths.size(); ++k) {
                    LabeledRow row{nb.label,
                                   neighborhood_report(l.spec, nb.beta,
                                                       depths[k]),
                                   std::nullopt};
                    ojson rj = neighborhood_json(row.exact);
                    rj["neighborhood"] = nb.label;
                    if (emp[k]) {
                        row.empirical =
                            summarize(*emp[k], l.spec, nb.beta, depths[k]);
                        rj["emp_cum_prob"] = row.empirical->cum_prob;
                        rj["emp_cum_prob_se"] = row.empirical->cum_prob_se;
                    }
                    j["rows"].push_back(rj);
                    rows.push_back(std::move(row));
                }
            }
            if (l.spec.num_levels() >= 2) {
                const BoundLines lines = bound_lines(l.spec, rep_beta.eps);
                j["lines"] = bound_lines_json(lines, rep_beta.eps);
                o.add("lines.csv", "cnrqo-lines/1",
                      bound_lines_csv(l.spec, lines), false);
            }
            o.add("table.csv", "cnrqo-table/1", table_csv(rows), true);
            o.add("report.json", "cnrqo-report/1", j.dump(2) + "\n", false);
        };
    });

    // qpe-dist
    double qd_delta = 0.0;
    int qd_t = 7;
    auto *qd = app.add_subcommand("qpe-dist",
                                  "ancilla outcome distribution for a Delta");
    qd->add_option("--delta", qd_delta, "phase fraction in [-1/2, 1/2)")
        ->required();
    qd->add_option("--t", qd_t, "ancilla qubits")->capture_default_str();
    qd->callback([&] {
        action = [&](Output &o) {
            o.config()["delta"] = qd_delta;
            o.config()["t"] = qd_t;
            if (qd_t < 1 || qd_t > 20) {
                throw ArgumentError("qpe-dist supports 1 <= t <= 20");
            }
            o.add("qpe.csv", "cnrqo-qpe/1",
                  qpe_distribution_csv(PhaseFraction(qd_delta), qd_t), true);
        };
    });

    std::vector<std::string> argv_store{"cnrqo"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (std::string &s : argv_store) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForVersion &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        Output output(join_args(args), out_dir, out);
        action(output);
        output.flush();
    } catch (const ResourceError &e) {
        err << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const ArgumentError &e) {
        err << "invalid argument: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ConfigError &e) {
        err << "invalid configuration: " << e.what() << '\n';
        return kExitValidation;
    } catch (const UndefinedError &e) {
        err << "undefined: " << e.what() << '\n';
        return kExitValidation;
    } catch (const nlohmann::json::exception &e) {
        err << "invalid JSON: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

} // namespace cnr
