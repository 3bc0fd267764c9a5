// Copyright 2026 The affstab Authors
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

#include "cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "affstab/affine_form.h"
#include "affstab/beyond.h"
#include "affstab/circuit.h"
#include "affstab/errors.h"
#include "affstab/measure.h"
#include "affstab/normal_form.h"
#include "affstab/oracle.h"

namespace affstab::cli {

namespace {

constexpr double kVerifyTol = 1e-9;

struct Options {
    std::string path;
    uint64_t shots = 1;
    uint64_t seed = 0;
    std::vector<size_t> qubits;
    std::string outcome;
    size_t limit = kDefaultWidthLimit;
    bool check = false;
};

struct Mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Circuit load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_circuit(buf.str());
    c.validate();
    return c;
}

std::vector<size_t> measured_qubits(const Circuit &c, const Options &opt) {
    std::vector<size_t> qubits = opt.qubits.empty() ? c.measured : opt.qubits;
    Circuit probe = c;
    probe.measured = qubits;
    probe.validate();
    return qubits;
}

std::string key_bits(uint64_t key, size_t width) {
    std::string s(width, '0');
    for (size_t k = 0; k < width; ++k) {
        if ((key >> k) & 1) {
            s[k] = '1';
        }
    }
    return s;
}

std::string format_deviation(double d) {
    std::ostringstream s;
    s << std::setprecision(3) << d;
    return s.str();
}

int cmd_normalize(const Options &opt, std::ostream &out, std::ostream &err) {
    const Circuit c = load(opt.path);
    const AffineForm s = run_clifford(c);
    const NormalFormState nf = synthesize_state_prep(s);
    const std::string text = emit_state_prep(nf, c.n_qubits, c.measured);
    if (opt.check) {
        if (c.n_qubits > kMaxOracleQubits) {
            err << "check skipped: " << c.n_qubits << " qubits exceeds the oracle width\n";
        } else if (!equal_up_to_phase(run_statevector(c), run_statevector(parse_circuit(text)), kVerifyTol)) {
            throw Mismatch("normal form does not reproduce the circuit's output state");
        }
    }
    out << text;
    return kOk;
}

int cmd_decompose(const Options &opt, std::ostream &out, std::ostream &err) {
    const Circuit c = load(opt.path);
    const OperatorNormalForm nf = decompose_operator(c);
    if (opt.check) {
        if (c.n_qubits > kMaxOperatorQubits) {
            err << "check skipped: " << c.n_qubits << " qubits exceeds the operator comparison width\n";
        } else {
            Circuit rebuilt;
            rebuilt.n_qubits = c.n_qubits;
            rebuilt.gates = nf.gates();
            if (!proportional_as_operators(c, rebuilt, kVerifyTol)) {
                throw Mismatch("M2 H M1 is not proportional to the circuit");
            }
        }
    }
    out << emit_operator(nf, c.n_qubits, c.measured);
    return kOk;
}

int cmd_sample(const Options &opt, std::ostream &out, std::ostream &) {
    Circuit c = load(opt.path);
    c.measured = measured_qubits(c, opt);
    std::vector<Outcome> shots;
    switch (classify(c)) {
        case CircuitClass::CliffordOnly: {
            const AffineForm s = run_clifford(c);
            shots = run_shots(opt.shots, opt.seed, Exec::Parallel, [&](std::mt19937_64 &rng) { return weak_sample(s, c.measured, rng); });
            break;
        }
        case CircuitClass::HTForm:
            shots = run_shots(opt.shots, opt.seed, Exec::Parallel, [&](std::mt19937_64 &rng) { return ht_weak_sample(c, rng); });
            break;
        case CircuitClass::ProductFrontClassicalDiagonal:
            shots = run_shots(opt.shots, opt.seed, Exec::Parallel, [&](std::mt19937_64 &rng) { return product_front_sample(c, rng); });
            break;
        case CircuitClass::OracleOnly:
            throw ClassificationError("no efficient sampler for this circuit (class OracleOnly)");
    }
    for (const auto &shot : shots) {
        out << shot.bits.to_string() << '\n';
    }
    return kOk;
}

int cmd_prob(const Options &opt, std::ostream &out, std::ostream &) {
    Circuit c = load(opt.path);
    const auto qubits = measured_qubits(c, opt);
    const BitVector alpha = BitVector::from_string(opt.outcome);
    if (alpha.size() != qubits.size()) {
        throw UsageError("--outcome has " + std::to_string(alpha.size()) + " bits but " + std::to_string(qubits.size()) +
                         " qubits are measured");
    }
    switch (classify(c)) {
        case CircuitClass::CliffordOnly:
            out << strong_prob(run_clifford(c), qubits, alpha).to_string() << '\n';
            return kOk;
        case CircuitClass::HTForm:
            out << ht_strong_count(c, qubits, alpha, opt.limit).as_fraction().to_string() << '\n';
            return kOk;
        default:
            throw ClassificationError("exact probabilities are only available for Clifford and HT circuits; for class " +
                                      std::string(to_string(classify(c))) + " strong simulation is #P-hard in general");
    }
}

int cmd_verify(const Options &opt, std::ostream &out, std::ostream &) {
    Circuit c = load(opt.path);
    c.measured = measured_qubits(c, opt);
    if (c.n_qubits > kMaxOracleQubits) {
        throw CapacityError("verify needs the oracle, which supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
    }
    const CircuitClass cls = classify(c);
    out << "class " << to_string(cls) << '\n';
    if (cls == CircuitClass::OracleOnly) {
        throw ClassificationError("no fast simulator to verify for class OracleOnly");
    }
    const StateVector v = run_statevector(c);
    const std::vector<double> expected = marginal(v, c.measured);
    std::vector<double> fast(expected.size(), 0.0);
    std::optional<bool> state_match;

    if (cls == CircuitClass::CliffordOnly) {
        const AffineForm s = run_clifford(c);
        for (const auto &[outcome, p] : enumerate_support(s, c.measured, uint64_t{1} << c.measured.size())) {
            uint64_t key = 0;
            for (size_t k = 0; k < outcome.bits.size(); ++k) {
                key |= uint64_t{outcome.bits[k]} << k;
            }
            fast[key] = p.to_double();
        }
        state_match = equal_up_to_phase(v, StateVector::from_amplitudes(c.n_qubits, s.dense_amplitudes()), kVerifyTol);
    } else if (cls == CircuitClass::HTForm) {
        const auto counts = ht_strong_distribution(c, c.measured, opt.limit);
        const auto m = static_cast<int>(hadamard_prefix_length(c));
        for (size_t k = 0; k < counts.size(); ++k) {
            fast[k] = std::ldexp(static_cast<double>(counts[k]), -m);
        }
    } else {
        fast = product_front_distribution(c, c.measured, opt.limit);
    }

    double deviation = 0.0;
    for (size_t k = 0; k < fast.size(); ++k) {
        deviation = std::max(deviation, std::abs(fast[k] - expected[k]));
    }
    const bool dist_ok = deviation <= kVerifyTol;
    out << "distribution " << (dist_ok ? "match" : "MISMATCH") << " max_deviation=" << format_deviation(deviation) << '\n';
    if (!dist_ok) {
        for (size_t k = 0; k < fast.size(); ++k) {
            if (std::abs(fast[k] - expected[k]) > kVerifyTol) {
                out << "  " << key_bits(k, c.measured.size()) << " fast=" << fast[k] << " oracle=" << expected[k] << '\n';
            }
        }
    }
    if (state_match) {
        out << "state " << (*state_match ? "match up to global phase" : "MISMATCH") << '\n';
    }
    const bool ok = dist_ok && state_match.value_or(true);
    out << (ok ? "OK" : "FAILED") << '\n';
    return ok ? kOk : kMismatch;
}

}  // namespace

int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Affine-form stabilizer simulation and Clifford normal forms", "affstab"};
    app.require_subcommand(1);
    Options opt;

    auto add_input = [&](CLI::App *sub) { sub->add_option("input", opt.path, "circuit file")->required(); };
    auto add_qubits = [&](CLI::App *sub) {
        sub->add_option("--qubits", opt.qubits, "measured qubits (default: the circuit's measure line)")->expected(1, -1);
    };
    auto add_limit = [&](CLI::App *sub) {
        sub->add_option("--limit", opt.limit, "maximum Hadamard count for brute-force HT probabilities")->capture_default_str();
    };

    auto *normalize = app.add_subcommand("normalize", "print the three-round state-preparation normal form");
    add_input(normalize);
    normalize->add_flag("--check", opt.check, "verify the output against the statevector oracle");

    auto *decompose = app.add_subcommand("decompose", "print the operator normal form M2 H M1");
    add_input(decompose);
    decompose->add_flag("--check", opt.check, "verify proportionality against the statevector oracle");

    auto *sample = app.add_subcommand("sample", "draw measurement outcomes");
    add_input(sample);
    sample->add_option("--shots", opt.shots, "number of shots")->capture_default_str();
    sample->add_option("--seed", opt.seed, "random seed")->capture_default_str();
    add_qubits(sample);

    auto *prob = app.add_subcommand("prob", "exact outcome probability");
    add_input(prob);
    add_qubits(prob);
    prob->add_option("--outcome", opt.outcome, "outcome bits in --qubits order")->required();
    add_limit(prob);

    auto *verify = app.add_subcommand("verify", "compare the fast simulator with the statevector oracle");
    add_input(verify);
    add_qubits(verify);
    add_limit(verify);

    std::vector<const char *> argv{"affstab"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kBadInput;
    }

    try {
        if (normalize->parsed()) {
            return cmd_normalize(opt, out, err);
        }
        if (decompose->parsed()) {
            return cmd_decompose(opt, out, err);
        }
        if (sample->parsed()) {
            return cmd_sample(opt, out, err);
        }
        if (prob->parsed()) {
            return cmd_prob(opt, out, err);
        }
        return cmd_verify(opt, out, err);
    } catch (const CapacityError &e) {
        err << "error: " << e.what() << '\n';
        return kCapacity;
    } catch (const Mismatch &e) {
        err << "verification failed: " << e.what() << '\n';
        return kMismatch;
    } catch (const ParseError &e) {
        err << opt.path << ": " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
}

}  // namespace affstab::cli
