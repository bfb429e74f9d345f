// betapar: expansions, local conversions, parallel adders and alphabet
// bounds from the command line.
//
// Exit status: 0 success, 1 invalid input, 2 a result failed the exact value
// check (with the counterexample printed).

#include "betapar/betapar.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace betapar;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kCounterexample = 2;

struct Options {
    bool json = false;
};

void emit(const Options& opt, const json& j, const std::string& text) {
    if (opt.json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

std::string bound_text(const std::optional<int>& card) {
    if (!card) {
        return "not applicable";
    }
    return "#A >= " + std::to_string(*card) + " (M >= " + std::to_string(*card - 1) + ")";
}

LocalRule rule_from_spec(const std::string& spec) {
    auto args = [&](const std::string& prefix) -> std::optional<std::vector<long long>> {
        if (spec.rfind(prefix, 0) != 0) {
            return std::nullopt;
        }
        return detail::parse_int_list(std::string_view(spec).substr(prefix.size()));
    };
    if (auto v = args("gde-plus-special:"); v && v->size() == 1) {
        return gde_plus_special(static_cast<int>((*v)[0]));
    }
    if (auto v = args("gde-plus:"); v && v->size() == 2) {
        return gde_plus(static_cast<int>((*v)[0]), static_cast<int>((*v)[1]));
    }
    if (auto v = args("gde-minus:"); v && v->size() == 2) {
        return gde_minus(static_cast<int>((*v)[0]), static_cast<int>((*v)[1]));
    }
    throw std::invalid_argument("unknown rule '" + spec + "'");
}

// Flips the output on the window that is 1 at the centre and 0 elsewhere.
LocalRule corrupted(const LocalRule& rule) {
    const int r = rule.memory();
    const std::size_t p = static_cast<std::size_t>(rule.width());
    const Alphabet out = rule.output_alphabet();
    WindowFunction fn = [inner = rule, r, p, out](std::span<const int> w) {
        int v = inner(w);
        bool hit = true;
        for (std::size_t i = 0; i < p && hit; ++i) {
            hit = w[i] == (static_cast<int>(i) == r ? 1 : 0);
        }
        if (hit) {
            v = out.contains(v + 1) ? v + 1 : v - 1;
        }
        return v;
    };
    return LocalRule(rule.name() + ":corrupted", rule.base(), rule.memory(), rule.anticipation(),
                     rule.input_alphabet(), out, std::move(fn));
}

json sum_json(const std::string& algo, const DigitString& x, const DigitString& y, const DigitString& z, bool ok) {
    return {{"algorithm", algo},
            {"x", to_string(x)},
            {"y", to_string(y)},
            {"result", to_string(z)},
            {"min_digit", z.min_digit()},
            {"max_digit", z.max_digit()},
            {"value_ok", ok}};
}

int report_sum(const Options& opt, const Adder& adder, const std::string& xs, const std::string& ys) {
    const DigitString x = parse_digit_string(xs);
    const DigitString y = parse_digit_string(ys);
    const DigitString z = adder(x, y);
    const bool ok = z.within(adder.alphabet) &&
                    values_equal(eval_digit_string(x, adder.base) + eval_digit_string(y, adder.base),
                                 eval_digit_string(z, adder.base));
    emit(opt, sum_json(adder.name, x, y, z, ok),
         to_string(z) + "\n" + (ok ? "value-ok" : "value-mismatch") + " (" + adder.name + ", alphabet " +
             adder.alphabet.to_string() + ")\n");
    return ok ? kOk : kCounterexample;
}

Adder block_adder_for(const BetaBase& base, std::optional<BlockParams> given, bool estimate, bool is_signed) {
    BlockParams params;
    if (given) {
        params = *given;
    } else {
        const int s = estimate ? estimate_s(base, 12).s : 0;
        params = params_for_pf_base(base, s);
    }
    BlockAdder blocks(base, params);
    const std::string name = "block:" + params.to_string();
    if (is_signed) {
        const int h = params.B.max_digit();
        return Adder{name + ":signed", base, Alphabet(-h, h), 5 * params.k,
                     [blocks](const DigitString& x, const DigitString& y) { return blocks.add_signed(x, y); }};
    }
    return Adder{name, base, params.A, 3 * params.k,
                 [blocks](const DigitString& x, const DigitString& y) { return blocks.add(x, y); }};
}

BlockParams explicit_params(const BetaBase& base, int k, int ell, int s) {
    BlockParams p = BlockParams::make(ell, s, beta_floor(base));
    if (p.k != k) {
        throw std::invalid_argument("k must equal 2(l + s) = " + std::to_string(p.k));
    }
    return p;
}

int cmd_dbeta(const Options& opt, const std::string& base_spec, int max_steps) {
    const BetaBase base = base_from_spec(base_spec);
    const ParryClassification c = classify_parry(base, max_steps);
    const std::string d = c.dbeta ? to_string(*c.dbeta) : "unknown";
    const PfClass pf = c.dbeta ? pf_sufficient(*c.dbeta) : PfClass::inconclusive;
    emit(opt, {{"base", base.name()}, {"dbeta", d}, {"parry", to_string(c.kind)}, {"property", to_string(pf)}},
         "d_beta(1) = " + d + "\nparry: " + to_string(c.kind) + "\nproperty: " + to_string(pf) + "\n");
    return kOk;
}

int cmd_expand(const Options& opt, const std::string& base_spec, const std::string& xs, int max_frac) {
    const BetaBase base = base_from_spec(base_spec);
    const DigitString x = parse_digit_string(xs);
    const GreedyExpansion g = greedy_expand_ge1(eval_digit_string(x, base), max_frac);
    emit(opt, {{"x", to_string(x)}, {"greedy", to_string(g.digits)}, {"exact", g.exact}},
         to_string(g.digits) + (g.exact ? "\n" : " ...\n"));
    return kOk;
}

int cmd_add(const Options& opt, const std::string& base_spec, const std::string& algo, const std::string& xs,
            const std::string& ys, bool is_signed) {
    const BetaBase base = base_from_spec(base_spec);
    if (algo.rfind("gde-chain", 0) == 0) {
        const auto q = quadratic_gde_for(base);
        if (!q) {
            throw std::invalid_argument("gde-chain needs a quadratic base with an elimination rule");
        }
        if (algo == "gde-chain") {
            return report_sum(opt, quadratic_adder(q->kind, q->a, q->b), xs, ys);
        }
        if (algo.rfind("gde-chain:", 0) != 0) {
            throw std::invalid_argument("unknown algorithm '" + algo + "'");
        }
        const auto d = detail::parse_int_list(std::string_view(algo).substr(10));
        if (d.size() != 1) {
            throw std::invalid_argument("gde-chain:d takes one shift");
        }
        return report_sum(opt, shifted_adder(q->kind, q->a, q->b, static_cast<int>(d[0])), xs, ys);
    }
    if (algo == "block") {
        return report_sum(opt, block_adder_for(base, std::nullopt, true, is_signed), xs, ys);
    }
    if (algo.rfind("block:", 0) == 0) {
        const auto v = detail::parse_int_list(std::string_view(algo).substr(6));
        if (v.size() != 3) {
            throw std::invalid_argument("block:k,l,s takes three parameters");
        }
        BlockParams p = explicit_params(base, static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]));
        return report_sum(opt, block_adder_for(base, p, false, is_signed), xs, ys);
    }
    throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

int cmd_block_add(const Options& opt, const std::string& base_spec, std::optional<int> k, std::optional<int> ell,
                  std::optional<int> s, bool estimate, const std::string& xs, const std::string& ys, bool is_signed) {
    const BetaBase base = base_from_spec(base_spec);
    std::optional<BlockParams> params;
    if (estimate) {
        if (k || s) {
            throw std::invalid_argument("--estimate-s replaces --k and --s");
        }
        const int s_est = estimate_s(base, 12).s;
        params = ell ? BlockParams::make(*ell, s_est, beta_floor(base)) : params_for_pf_base(base, s_est);
    } else {
        if (!k || !ell || !s) {
            throw std::invalid_argument("block-add needs --k, --ell and --s, or --estimate-s");
        }
        params = explicit_params(base, *k, *ell, *s);
    }
    return report_sum(opt, block_adder_for(base, params, false, is_signed), xs, ys);
}

int cmd_verify(const Options& opt, const std::string& base_spec, const std::string& rule_spec,
               std::optional<int> exhaustive, std::optional<std::size_t> random, std::uint64_t seed, int max_len,
               bool corrupt) {
    LocalRule rule = rule_from_spec(rule_spec);
    if (!base_spec.empty() && !base_from_spec(base_spec).same_as(rule.base())) {
        throw std::invalid_argument("rule " + rule.name() + " is not a rule for base " + base_spec);
    }
    if (corrupt) {
        rule = corrupted(rule);
    }
    if (exhaustive.has_value() == random.has_value()) {
        throw std::invalid_argument("give exactly one of --exhaustive and --random");
    }
    VerificationStrategy strategy = exhaustive ? VerificationStrategy(Exhaustive{*exhaustive})
                                               : VerificationStrategy(RandomSample{*random, seed, max_len});
    const ConversionReport report = verify_conversion(rule, strategy);
    std::string text = report.subject + " " + report.strategy + ": " + (report.passed() ? "pass" : "fail") + ", " +
                       std::to_string(report.checked_count) + " strings\n";
    for (const auto& f : report.failures) {
        text += "counterexample: " + f.input + " -> " + f.output + " (" + f.reason + ")\n";
    }
    emit(opt, report.to_json(), text);
    return report.passed() ? kOk : kCounterexample;
}

int cmd_bounds(const Options& opt, const std::string& base_spec) {
    const BetaBase base = base_from_spec(base_spec);
    const ParryClassification c = classify_parry(base);
    const Integer one_block = lower_bound_1block(base.poly(), true);
    std::optional<int> simple, nonsimple;
    std::optional<MInterval> range;
    if (c.dbeta) {
        simple = block_lower_bound_simple(*c.dbeta);
        nonsimple = block_lower_bound_nonsimple(*c.dbeta);
        range = upper_bound_corollaries(*c.dbeta);
    }
    const UnitConjugateEvidence unit = block_impossible_unit_conjugate(base.poly());
    const std::string d = c.dbeta ? to_string(*c.dbeta) : "unknown";
    const PfClass pf = c.dbeta ? pf_sufficient(*c.dbeta) : PfClass::inconclusive;

    json j{{"base", base.name()},
           {"dbeta", d},
           {"parry", to_string(c.kind)},
           {"property", to_string(pf)},
           {"one_block_min_cardinality", one_block.str()},
           {"unit_conjugate", to_string(unit)}};
    auto opt_json = [](const std::optional<int>& v) { return v ? json(*v) : json(nullptr); };
    j["block_simple_min_cardinality"] = opt_json(simple);
    j["block_nonsimple_min_cardinality"] = opt_json(nonsimple);
    j["block_M_range"] = range ? json::array({range->lo, range->hi}) : json(nullptr);

    std::string text = "base: " + base.name() + "\nd_beta(1) = " + d + "\nparry: " + to_string(c.kind) +
                       "\nproperty: " + to_string(pf) + "\n1-block: #A >= " + one_block.str() +
                       "\nblock (simple): " + bound_text(simple) + "\nblock (non-simple): " + bound_text(nonsimple) +
                       "\nblock M in " +
                       (range ? "[" + std::to_string(range->lo) + ", " + std::to_string(range->hi) + "]"
                              : std::string("not applicable")) +
                       "\nunit-circle conjugate: " + to_string(unit) + "\n";
    emit(opt, j, text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact beta-expansions and parallel addition"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "Machine-readable output");

    std::string base_spec;
    int max_steps = 10000;
    auto* dbeta = app.add_subcommand("dbeta", "Expansion of 1 and Parry classification");
    dbeta->add_option("--base", base_spec, "Base preset or coefficient list")->required();
    dbeta->add_option("--max-steps", max_steps, "Greedy steps before giving up");

    std::string xs, ys;
    int max_frac = 64;
    auto* expand = app.add_subcommand("expand", "Greedy expansion of a digit string's value");
    expand->add_option("--base", base_spec)->required();
    expand->add_option("--x", xs)->required();
    expand->add_option("--max-frac", max_frac, "Fractional digit budget");

    std::string algo;
    bool is_signed = false;
    auto* add = app.add_subcommand("add", "Parallel addition with an exact check");
    add->add_option("--base", base_spec)->required();
    add->add_option("--algo", algo, "gde-chain, gde-chain:d, block, block:k,l,s")->required();
    add->add_option("--x", xs)->required();
    add->add_option("--y", ys)->required();
    add->add_flag("--signed", is_signed, "Block adder on {-h..h}");

    std::optional<int> k, ell, s;
    bool estimate = false;
    auto* block_add = app.add_subcommand("block-add", "k-block addition with explicit parameters");
    block_add->add_option("--base", base_spec)->required();
    block_add->add_option("--k", k);
    block_add->add_option("--ell", ell);
    block_add->add_option("--s", s);
    block_add->add_flag("--estimate-s", estimate, "Estimate s from sums of beta-integers");
    block_add->add_option("--x", xs)->required();
    block_add->add_option("--y", ys)->required();
    block_add->add_flag("--signed", is_signed);

    std::string rule_spec;
    std::optional<int> exhaustive;
    std::optional<std::size_t> random;
    std::uint64_t seed = 1;
    int max_len = 12;
    bool corrupt = false;
    auto* verify = app.add_subcommand("verify", "Check a conversion rule against the value oracle");
    verify->add_option("--base", base_spec);
    verify->add_option("--rule", rule_spec, "gde-plus:a,b, gde-plus-special:a, gde-minus:a,b")->required();
    verify->add_option("--exhaustive", exhaustive, "All strings of this length");
    verify->add_option("--random", random, "Number of random strings");
    verify->add_option("--seed", seed);
    verify->add_option("--max-len", max_len, "Longest random string");
    verify->add_flag("--corrupt", corrupt, "Break one window (self-test of the checker)");

    auto* bounds = app.add_subcommand("bounds", "Alphabet bounds for parallel addition");
    bounds->add_option("--base", base_spec)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }

    try {
        if (*dbeta) {
            return cmd_dbeta(opt, base_spec, max_steps);
        }
        if (*expand) {
            return cmd_expand(opt, base_spec, xs, max_frac);
        }
        if (*add) {
            return cmd_add(opt, base_spec, algo, xs, ys, is_signed);
        }
        if (*block_add) {
            return cmd_block_add(opt, base_spec, k, ell, s, estimate, xs, ys, is_signed);
        }
        if (*verify) {
            return cmd_verify(opt, base_spec, rule_spec, exhaustive, random, seed, max_len, corrupt);
        }
        if (*bounds) {
            return cmd_bounds(opt, base_spec);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
