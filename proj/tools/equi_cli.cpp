// Command-line front end over the JSON formats.
//
// Exit codes: 0 ok, 2 usage, 3 malformed input, 4 internal check failed,
// 5 verification failed.

#include "equi/json_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace equi;

namespace {

constexpr int kUsage = 2, kParse = 3, kInternal = 4, kVerification = 5;
constexpr int kMaxTrunc = 12;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InternalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::optional<int> trunc;  // unset: EQUI_TRUNC or the default
    std::string format = "json";
    std::string output;
    std::optional<int> order;
    int oracle_steps = 0;
};

int resolve_trunc(const Config &cfg) {
    int n = NCSeries<LaurentSeries>::kDefaultTrunc;
    if (const char *env = std::getenv("EQUI_TRUNC"); env && *env) {
        try {
            std::size_t used = 0;
            n = std::stoi(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception &) {
            throw UsageError(std::string("EQUI_TRUNC must be an integer, got '") + env + "'");
        }
    }
    if (cfg.trunc) n = *cfg.trunc;
    if (n < 1 || n > kMaxTrunc)
        throw UsageError("truncation must lie in 1.." + std::to_string(kMaxTrunc) + ", got " + std::to_string(n));
    return n;
}

Json read_json(const std::string &path) {
    std::stringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw InputError("cannot open '" + path + "'");
        buf << in.rdbuf();
    }
    try {
        return Json::parse(buf.str());
    } catch (const Json::parse_error &e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

int cmd_frame(const Config &cfg) {
    const int order = cfg.order ? *cfg.order : resolve_trunc(cfg);
    if (order < 1 || order > kMaxTrunc)
        throw UsageError("--order must lie in 1.." + std::to_string(kMaxTrunc) + ", got " + std::to_string(order));
    const UniversalFrame frame = universal_frame(order);
    Json j = frame_to_json(frame, order);
    if (cfg.oracle_steps > 0) {
        LieElement e(order);
        for (int n = 1; n <= order; ++n) e.add({n}, LaurentSeries(1));
        const GradedKernel k{KernelKind::power_flow, e, LaurentSeries::z_power(-1)};
        const NCSeries<double> numeric = product_integral_oracle(k, 0.0, 1.0, cfg.oracle_steps, 1.0);
        double worst = 0;
        for (const auto &row : frame.table)
            worst = std::max(worst, std::abs(numeric.coeff(row.word) - row.coefficient.get_d()));
        j["oracle"] = {{"steps", cfg.oracle_steps}, {"max_error", worst}};
        std::cerr << "oracle: " << cfg.oracle_steps << " steps, max error " << worst << "\n";
    }
    write_text(cfg.output, cfg.format == "csv" ? frame_to_csv(frame) : dump(j));
    return 0;
}

int cmd_birkhoff(const Config &cfg, const std::string &input, const std::string &minus_out,
                 const std::string &plus_out) {
    const Character phi = character_from_json(read_json(input), resolve_trunc(cfg));
    const BirkhoffParts parts = birkhoff(phi);
    const auto &pres = phi.presentation();

    const bool reconstructed = convolve(antipode_inverse(parts.minus), parts.plus) == phi;
    bool pole_pure = parts.minus.value(0) == LaurentSeries(1), regular = parts.plus.value(0) == LaurentSeries(1);
    for (std::size_t i = 1; i < pres->size(); ++i) {
        const LaurentSeries &m = parts.minus.value(i);
        pole_pure = pole_pure && pole_part(m) == m;
        regular = regular && parts.plus.value(i).pole_order() <= 0;
    }
    if (!reconstructed || !pole_pure || !regular) throw InternalError("Birkhoff decomposition failed its own check");

    if (!minus_out.empty()) write_text(minus_out, dump(character_to_json(parts.minus)));
    if (!plus_out.empty()) write_text(plus_out, dump(character_to_json(parts.plus)));
    Json report = {{"reconstructed", "exact"}, {"minus_pole_pure", pole_pure}, {"plus_regular", regular},
                   {"multiplicative", phi.is_multiplicative()}};
    write_text(cfg.output, dump({{"minus", character_to_json(parts.minus)},
                                 {"plus", character_to_json(parts.plus)},
                                 {"report", report}}));
    return 0;
}

int cmd_verify(const Config &cfg, const std::string &input) {
    const InvariantConnection omega = connection_from_json(read_json(input), resolve_trunc(cfg));
    write_text(cfg.output, dump(verdict_to_json(verify_connection(omega))));
    return 0;
}

int cmd_classify(const Config &cfg, const std::string &input) {
    const InvariantConnection omega = connection_from_json(read_json(input), resolve_trunc(cfg));
    const Verdict v = verify_connection(omega);
    if (!v.flat || !v.equisingular || !v.beta) {
        std::cerr << "classify: connection is " << (v.flat ? "flat" : "not flat") << " and "
                  << (v.equisingular ? "equisingular" : "not equisingular") << "\n";
        return kVerification;
    }
    write_text(cfg.output, dump(series_to_json(*v.beta)));
    return 0;
}

int cmd_from_beta(const Config &cfg, const std::string &input) {
    const LieElement beta = series_from_json(read_json(input), resolve_trunc(cfg));
    write_text(cfg.output, dump(connection_to_json(from_beta(beta))));
    return 0;
}

int cmd_morphism(const Config &cfg, const std::string &source, const std::string &target, const std::string &map) {
    const BundleObject src = object_from_json(read_json(source));
    const BundleObject dst = object_from_json(read_json(target));
    const RationalMatrix T = morphism_from_json(read_json(map), src, dst);
    const bool ok = morphism_check(src, dst, T);
    write_text(cfg.output, dump({{"morphism", ok}, {"hom_dimension", hom_dimension(src, dst)}}));
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact computations with equisingular connections and their Hopf-algebraic data"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    app.add_option("--trunc", cfg.trunc, "Truncation degree N (1..12); overrides EQUI_TRUNC");
    app.add_option("-o,--output", cfg.output, "Output path (default stdout)");

    auto *frame = app.add_subcommand("frame", "Universal singular frame coefficients");
    frame->add_option("--order", cfg.order, "Highest word degree (default N)");
    frame->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    frame->add_option("--oracle-steps", cfg.oracle_steps, "Compare against a product integral with this many steps")
        ->check(CLI::NonNegativeNumber);

    std::string input, minus_out, plus_out, source, target, map;
    auto *birk = app.add_subcommand("birkhoff", "Birkhoff decomposition of a character");
    birk->add_option("character", input, "Character JSON ('-' for stdin)")->required();
    birk->add_option("--minus-out", minus_out, "Also write the minus part here");
    birk->add_option("--plus-out", plus_out, "Also write the plus part here");

    auto *verify = app.add_subcommand("verify", "Flatness and equisingularity verdict for a connection");
    verify->add_option("connection", input, "Connection JSON ('-' for stdin)")->required();

    auto *classify = app.add_subcommand("classify", "Recover beta from a flat equisingular connection");
    classify->add_option("connection", input, "Connection JSON ('-' for stdin)")->required();

    auto *fb = app.add_subcommand("from-beta", "Connection generated by a constant beta");
    fb->add_option("beta", input, "Series JSON ('-' for stdin)")->required();

    auto *morph = app.add_subcommand("morphism", "Check a graded map between flat bundle objects");
    morph->add_option("source", source, "Source object JSON")->required();
    morph->add_option("target", target, "Target object JSON")->required();
    morph->add_option("map", map, "Degree blocks of the map")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*frame) return cmd_frame(cfg);
        if (*birk) return cmd_birkhoff(cfg, input, minus_out, plus_out);
        if (*verify) return cmd_verify(cfg, input);
        if (*classify) return cmd_classify(cfg, input);
        if (*fb) return cmd_from_beta(cfg, input);
        if (*morph) return cmd_morphism(cfg, source, target, map);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError &e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return kInternal;
    } catch (const InputError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const ParseError &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const PresentationMismatch &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const NotFiltrationCompatible &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const NotDegreeCompatible &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const Json::exception &e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
