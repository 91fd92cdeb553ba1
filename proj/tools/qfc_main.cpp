// qfc: command-line front end over the core library.
//
// Exit codes: 0 ok, 2 validation error, 3 size guard, 4 internal invariant breach.

#include "io.hpp"

#include "qfc/branching.hpp"
#include "qfc/chars.hpp"
#include "qfc/errors.hpp"
#include "qfc/freeops.hpp"
#include "qfc/lln.hpp"
#include "qfc/measures.hpp"
#include "qfc/repr.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace qfc;
using io::json;

namespace {

enum Exit { kOk = 0, kValidation = 2, kSizeGuard = 3, kInvariant = 4 };

struct Options {
    std::string group = "A";
    std::vector<std::string> signatures;
    int K = 12;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;

    // command specific
    std::string kind;
    std::string alpha;
    std::string direction = "forward";
    std::string route = "both";
    std::string x;
    std::string mode;
    std::string scale;
    std::string Ns;
    std::string widths = "9,13";
    std::string diagram;
    std::vector<std::string> profiles;
    std::vector<std::string> inputs;
    std::string experiment;
    std::string measureKind;
    int keep = 0;
    int bits = 0;
    long trials = 0;
};

std::vector<int> parseInts(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == tok.size() && !tok.empty(), "malformed integer list '" + text + "'");
        out.push_back(v);
    }
    require(!out.empty(), "empty integer list");
    return out;
}

std::vector<long> parseLongs(const std::string& text) {
    std::vector<long> out;
    for (int v : parseInts(text)) out.push_back(v);
    return out;
}

Series group(const Options& o) { return parseSeries(o.group); }

Signature signature(const Options& o) {
    require(o.signatures.size() == 1, "expected exactly one --signature");
    return parseSignature(group(o), o.signatures.front());
}

std::string formatOr(const Options& o, const std::string& fallback) {
    const std::string f = o.format.empty() ? fallback : o.format;
    require(f == "json" || f == "csv", "unknown format '" + f + "' (expected json or csv)");
    return f;
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        io::writeFileAtomically(o.out, text);
}

void emitJson(const Options& o, const json& j) { emit(o, j.dump(2) + "\n"); }

MomentSequence input(const Options& o, std::size_t i) {
    require(i < o.inputs.size(), "missing input measure or moment file");
    return io::momentsFromJson(io::loadJsonArg(o.inputs[i]), o.K);
}

RKind rkind(const std::string& s) {
    if (s == "quant" || s == "quantized") return RKind::quantized;
    if (s == "free") return RKind::free;
    throw ValidationError("unknown kind '" + s + "' (expected quant or free)");
}

void emitMoments(const Options& o, const MomentSequence& m) {
    if (formatOr(o, "json") == "json") return emitJson(o, io::toJson(m));
    std::string out = "k,moment\n";
    for (int k = 0; k <= m.order(); ++k) out += std::to_string(k) + "," + toString(m[k]) + "\n";
    emit(o, out);
}

void emitDecomposition(const Options& o, const DecompositionMeasure& rho, const Multiplicities& mult) {
    if (formatOr(o, "json") == "json") return emitJson(o, io::toJson(rho, &mult));
    std::string out = "signature,multiplicity,weight\n";
    for (const auto& [s, w] : rho.weights()) {
        auto it = mult.find(s);
        out += "\"" + toString(s) + "\"," + (it == mult.end() ? std::string() : toString(it->second)) + "," + toString(w) + "\n";
    }
    emit(o, out);
}

int cmdMeasure(const Options& o) {
    const Signature l = signature(o);
    DiscreteMeasure m;
    if (o.kind == "counting")
        m = countingMeasure(l);
    else if (o.kind == "hat")
        m = hatMeasure(l);
    else if (o.kind == "pp")
        m = ppMeasure(l);
    else
        throw ValidationError("unknown measure '" + o.kind + "' (expected counting, hat or pp)");
    if (formatOr(o, "json") == "json") {
        emitJson(o, io::toJson(m));
    } else {
        std::string out = "pos,weight\n";
        for (const auto& a : m.atoms()) out += toString(a.pos) + "," + toString(a.weight) + "\n";
        emit(o, out);
    }
    return kOk;
}

int cmdConvolve(const Options& o) {
    require(!o.inputs.empty(), "convolve needs at least one input");
    std::vector<MomentSequence> in;
    for (std::size_t i = 0; i < o.inputs.size(); ++i) in.push_back(input(o, i));
    emitMoments(o, convolve(rkind(o.kind.empty() ? "quant" : o.kind), in));
    return kOk;
}

int cmdProject(const Options& o) {
    require(!o.alpha.empty(), "project needs --alpha");
    require(o.inputs.size() == 1, "project takes one input");
    emitMoments(o, project(rkind(o.kind.empty() ? "quant" : o.kind), parseRational(o.alpha), input(o, 0)));
    return kOk;
}

int cmdQmap(const Options& o) {
    require(o.inputs.size() == 1, "qmap takes one input");
    const MomentSequence m = input(o, 0);
    if (o.route == "series") return emitMoments(o, qMapSeriesRoute(m)), kOk;
    if (o.route == "reflection") return emitMoments(o, qMapReflectionRoute(m)), kOk;
    require(o.route == "both", "unknown route '" + o.route + "' (expected series, reflection or both)");
    emitMoments(o, qMap(m));
    return kOk;
}

int cmdMk(const Options& o) {
    require(o.inputs.size() == 1, "mk takes one input");
    MKDirection d = MKDirection::forward;
    if (o.direction == "inverse")
        d = MKDirection::inverse;
    else
        require(o.direction == "forward", "unknown direction '" + o.direction + "'");
    emitMoments(o, markovKreinMap(input(o, 0), d));
    return kOk;
}

int cmdInfdiv(const Options& o) {
    require(o.inputs.size() == 1, "infdiv takes one parameter file");
    InfDivParameters c = io::infDivFromJson(io::loadJsonArg(o.inputs[0]), o.K);
    if (!o.scale.empty()) c = scaleParameters(c, parseRational(o.scale));
    emitMoments(o, infDivMoments(c));
    return kOk;
}

int cmdTensor(const Options& o) {
    require(!o.signatures.empty(), "tensor needs at least one --signature");
    std::vector<Signature> f;
    for (const auto& s : o.signatures) f.push_back(parseSignature(group(o), s));
    const Multiplicities mult = group(o) == Series::A ? tensorMultiplicitiesLR(f) : tensorMultiplicities(f);
    emitDecomposition(o, weighByDimension(f.front().system(), mult), mult);
    return kOk;
}

int cmdRestrict(const Options& o) {
    const Signature l = signature(o);
    require(o.keep > 0, "restrict needs --keep M with 0 < M < N");
    const Multiplicities mult = restrictMultiplicities(l, o.keep);
    emitDecomposition(o, weighByDimension(RootSystem{l.system().series, o.keep}, mult), mult);
    return kOk;
}

int cmdSampleTiling(const Options& o) {
    const Signature l = signature(o);
    const TilingMode mode = o.mode.empty() ? tilingModeFor(l.system().series) : parseTilingMode(o.mode);
    const InterlacingChain chain = sampleTiling(l, mode, o.seed);
    if (formatOr(o, "json") == "json") {
        json j = io::toJson(chain);
        j["seed"] = std::to_string(o.seed);
        return emitJson(o, j), kOk;
    }
    std::string out = "column,row\n";
    for (std::size_t j = 0; j < chain.rows.size(); ++j) {
        std::string row;
        for (std::size_t i = 0; i < chain.rows[j].size(); ++i) row += (i ? "," : "") + std::to_string(chain.rows[j][i]);
        out += std::to_string(chain.topColumn - static_cast<int>(j)) + ",\"" + row + "\"\n";
    }
    emit(o, out);
    return kOk;
}

int cmdChar(const Options& o) {
    const Signature l = signature(o);
    require(!o.x.empty(), "char needs --x");
    const Rational x = parseRational(o.x);
    json j = {{"group", o.group}, {"signature", toString(l)}, {"x", toString(x)}};
    if (o.bits > 0) {
        const HPFloat v = normalizedCharOneVar(l, toHP(x, o.bits));
        std::ostringstream ss;
        ss << std::setprecision(static_cast<int>(o.bits * 0.30103)) << v;
        j["value"] = ss.str();
        j["precision_bits"] = o.bits;
    } else {
        j["value"] = toString(normalizedCharOneVar(l, x));
    }
    emitJson(o, j);
    return kOk;
}

std::vector<Profile> profiles(const Options& o) {
    std::vector<Profile> out;
    for (const auto& p : o.profiles) out.push_back(io::profileFromJson(io::loadJsonArg(p)));
    return out;
}

void emitReport(const Options& o, const ExperimentReport& r) {
    if (formatOr(o, "csv") == "json") return emitJson(o, io::toJson(r));
    std::ostringstream os;
    io::writeCsv(os, r);
    emit(o, os.str());
}

int cmdLln(const Options& o) {
    const MeasureKind kind = parseMeasureKind(o.measureKind.empty() ? "counting" : o.measureKind);
    const std::string& e = o.experiment;
    if (e == "kerov") {
        require(!o.diagram.empty(), "kerov needs --diagram");
        return emitReport(o, kerovLimitCheck(parseLongs(o.diagram), parseInts(o.Ns), o.K)), kOk;
    }
    const std::vector<Profile> fs = profiles(o);
    require(!fs.empty(), "lln " + e + " needs --profile or --profiles");
    if (e == "tensor") return emitReport(o, runTensorLLN(fs, group(o), parseInts(o.Ns), o.K, kind)), kOk;
    require(fs.size() == 1, "lln " + e + " takes one profile");
    if (e == "restrict") {
        require(!o.alpha.empty(), "restrict needs --alpha");
        std::optional<MonteCarloOptions> mc;
        if (o.trials > 0) mc = MonteCarloOptions{o.trials, o.seed};
        return emitReport(o, runRestrictionLLN(fs[0], parseRational(o.alpha), group(o), parseInts(o.Ns), o.K, kind, mc)), kOk;
    }
    if (e == "pp") return emitReport(o, ppLimitConsistency(fs[0], group(o), parseInts(o.Ns), o.K)), kOk;
    if (e == "symmetry") {
        require(o.trials > 0, "symmetry needs --trials");
        const SymmetryComparison cmp = runSymmetryComparison(fs[0], parseInts(o.widths), o.trials, o.seed);
        if (formatOr(o, "csv") == "json") {
            json ws = json::array();
            for (const auto& w : cmp.widths) {
                json pts = json::array();
                for (const auto& p : w.points)
                    pts.push_back({{"column", p.column}, {"y", toString(p.y)}, {"strong_mean", p.strongMean},
                                   {"weak_mean", p.weakMean}, {"strong_se", p.strongSE}, {"weak_se", p.weakSE}});
                ws.push_back({{"width", w.width}, {"strong_top", toString(w.strongTop)}, {"weak_top", toString(w.weakTop)},
                              {"sup_gap", w.supGap}, {"within_band", w.withinBand}, {"points", pts}});
            }
            return emitJson(o, {{"experiment", "symmetry"}, {"seed", std::to_string(o.seed)}, {"widths", ws}}), kOk;
        }
        std::string out = "# experiment=symmetry seed=" + std::to_string(o.seed) + " trials=" + std::to_string(o.trials) +
                          " precision=" + std::to_string(io::kCsvDigits) + "\n";
        out += "width,column,y,strong_mean,weak_mean,strong_se,weak_se,gap,band\n";
        for (const auto& w : cmp.widths)
            for (const auto& p : w.points)
                out += std::to_string(w.width) + "," + std::to_string(p.column) + "," + toString(p.y) + "," +
                       io::formatDecimal(p.strongMean) + "," + io::formatDecimal(p.weakMean) + "," +
                       io::formatDecimal(p.strongSE) + "," + io::formatDecimal(p.weakSE) + "," +
                       io::formatDecimal(p.gap()) + "," + io::formatDecimal(p.band()) + "\n";
        return emit(o, out), kOk;
    }
    throw ValidationError("unknown experiment '" + e + "' (expected tensor, restrict, pp, kerov or symmetry)");
}

// Semicircle of variance 2: M_k doubles every two orders.
bool doubledSemicircle(const MomentSequence& m, const MomentSequence& s) {
    Rational scale = 1;
    for (int k = 0; k <= m.order(); ++k) {
        if (k > 0 && k % 2 == 0) scale *= 2;
        if (m[k] != scale * s[k]) return false;
    }
    return true;
}

// Without an input: quick identities that must hold exactly. With one: probability checks on it.
int cmdCheck(const Options& o) {
    if (!o.inputs.empty()) {
        const MomentSequence m = input(o, 0);
        json minors = json::array();
        for (const auto& d : hankelMinors(m, o.K)) minors.push_back(toString(d));
        emitJson(o, {{"mass", toString(m[0])}, {"hankel_minors", minors}, {"hankel_nonnegative", hankelNonNegative(m, o.K)}});
        return kOk;
    }
    const int K = o.K;
    struct Item {
        const char* name;
        bool ok;
    };
    std::vector<MomentSequence> two = {semicircleMoments(K), semicircleMoments(K)};
    const MomentSequence u01 = uniformMoments(0, 1, K);
    MomentSequence delta0{std::vector<Rational>(static_cast<std::size_t>(K + 1), Rational(0)), true};
    delta0.values[0] = 1;
    const Signature fig(RootSystem{Series::A, 3}, {3, 1, -4});
    const std::vector<Item> items = {
        {"counting measure of 3,1,-4", countingMeasure(fig) == DiscreteMeasure({{makeRational(5, 3), makeRational(1, 3)},
                                                                             {makeRational(2, 3), makeRational(1, 3)},
                                                                             {makeRational(-4, 3), makeRational(1, 3)}})},
        {"semicircle doubling", doubledSemicircle(convolve(RKind::free, two), semicircleMoments(K))},
        {"u[0,1] is the quantized identity", convolve(RKind::quantized, {u01, translateMoments(u01, 2)}) == translateMoments(u01, 2)},
        {"Q(u[0,1]) = delta(0)", qMap(u01) == delta0},
        {"pp mass", ppMeasure(fig).totalMass() == 1},
    };
    bool all = true;
    std::string out;
    for (const auto& it : items) {
        out += std::string(it.ok ? "ok   " : "FAIL ") + it.name + "\n";
        all = all && it.ok;
    }
    emit(o, out);
    return all ? kOk : kInvariant;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qfc: exact moments, free convolutions and representation measures of classical groups"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* c) {
        c->add_option("--group", o.group, "Root system series: A, B, C or D")->capture_default_str();
        c->add_option("--K", o.K, "Truncation order (moments through M_K)")->capture_default_str();
        c->add_option("--seed", o.seed, "64-bit seed")->capture_default_str();
        c->add_option("--out", o.out, "Output file (default: standard output)");
        c->add_option("--format", o.format, "json or csv");
    };
    auto withSignature = [&](CLI::App* c) {
        c->add_option("--signature", o.signatures, "Signature such as 3,1,-4")->required();
    };

    auto* measure = app.add_subcommand("measure", "Counting, hat or PP measure of a signature");
    common(measure);
    withSignature(measure);
    measure->add_option("kind", o.kind, "counting | hat | pp")->required();

    auto* conv = app.add_subcommand("convolve", "Free or quantized free convolution of moment inputs");
    common(conv);
    conv->add_option("--kind", o.kind, "quant | free");
    conv->add_option("inputs", o.inputs, "Moment or measure JSON (file or inline)")->required();

    auto* proj = app.add_subcommand("project", "Free or quantized projection with ratio alpha");
    common(proj);
    proj->add_option("--kind", o.kind, "quant | free");
    proj->add_option("--alpha", o.alpha, "Ratio in (0, 1]")->required();
    proj->add_option("inputs", o.inputs)->required();

    auto* qmap = app.add_subcommand("qmap", "Markov-Krein map Q of a measure");
    common(qmap);
    qmap->add_option("--route", o.route, "series | reflection | both")->capture_default_str();
    qmap->add_option("inputs", o.inputs)->required();

    auto* mk = app.add_subcommand("mk", "Markov-Krein correspondence");
    common(mk);
    mk->add_option("--direction", o.direction, "forward | inverse")->capture_default_str();
    mk->add_option("inputs", o.inputs)->required();

    auto* infdiv = app.add_subcommand("infdiv", "Moments of an infinitely divisible measure from its parameters");
    common(infdiv);
    infdiv->add_option("--scale", o.scale, "Scale all parameters by t first");
    infdiv->add_option("inputs", o.inputs, "Parameter JSON")->required();

    auto* tensor = app.add_subcommand("tensor", "Tensor product decomposition");
    common(tensor);
    withSignature(tensor);

    auto* restrict = app.add_subcommand("restrict", "Restriction to a smaller group of the same series");
    common(restrict);
    withSignature(restrict);
    restrict->add_option("--keep", o.keep, "Rank M of the subgroup")->required();

    auto* tiling = app.add_subcommand("sample-tiling", "Uniform random tiling of the strip with a given top row");
    common(tiling);
    withSignature(tiling);
    tiling->add_option("--mode", o.mode, "none | strong | weak (default from the group)");

    auto* chr = app.add_subcommand("char", "Normalized one-variable character value");
    common(chr);
    withSignature(chr);
    chr->add_option("--x", o.x, "Point as p/q")->required();
    chr->add_option("--bits", o.bits, "Evaluate in floating point with this many bits");

    auto* lln = app.add_subcommand("lln", "Law-of-large-numbers experiments (CSV by default)");
    common(lln);
    lln->add_option("experiment", o.experiment, "tensor | restrict | pp | kerov | symmetry")->required();
    lln->add_option("--profile", o.profiles, "Profile JSON (file or inline); repeatable");
    lln->add_option("--profiles", o.profiles, "Comma-separated profile files")->delimiter(',');
    lln->add_option("--Ns", o.Ns, "Comma-separated ranks")->default_str("4,6,8");
    lln->add_option("--alpha", o.alpha, "Restriction ratio");
    lln->add_option("--kind", o.measureKind, "counting | pp");
    lln->add_option("--trials", o.trials, "Monte Carlo trials (0: exact)");
    lln->add_option("--diagram", o.diagram, "Young diagram rows for kerov");
    lln->add_option("--widths", o.widths, "Strip widths for symmetry")->capture_default_str();

    auto* check = app.add_subcommand("check", "Built-in identities, or Hankel checks of an input");
    common(check);
    check->add_option("inputs", o.inputs);

    o.Ns = "4,6,8";
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kValidation;
    }

    try {
        if (*measure) return cmdMeasure(o);
        if (*conv) return cmdConvolve(o);
        if (*proj) return cmdProject(o);
        if (*qmap) return cmdQmap(o);
        if (*mk) return cmdMk(o);
        if (*infdiv) return cmdInfdiv(o);
        if (*tensor) return cmdTensor(o);
        if (*restrict) return cmdRestrict(o);
        if (*tiling) return cmdSampleTiling(o);
        if (*chr) return cmdChar(o);
        if (*lln) return cmdLln(o);
        if (*check) return cmdCheck(o);
    } catch (const SizeGuardError& e) {
        std::cerr << "qfc: size guard: " << e.what() << "\n";
        return kSizeGuard;
    } catch (const InvariantError& e) {
        std::cerr << "qfc: invariant violated: " << e.what() << "\n";
        return kInvariant;
    } catch (const ValidationError& e) {
        std::cerr << "qfc: " << e.what() << "\n";
        return kValidation;
    } catch (const json::exception& e) {
        std::cerr << "qfc: bad JSON: " << e.what() << "\n";
        return kValidation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qfc: " << e.what() << "\n";
        return kValidation;
    } catch (const std::out_of_range& e) {
        std::cerr << "qfc: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "qfc: internal error: " << e.what() << "\n";
        return kInvariant;
    }
    return kValidation;
}
