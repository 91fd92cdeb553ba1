#include "io.hpp"

#include "qfc/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qfc::io {

namespace {

const json& field(const json& j, const char* key) {
    require(j.is_object() && j.contains(key), std::string("missing field '") + key + "'");
    return j.at(key);
}

std::vector<long> rowFromJson(const json& j) {
    require(j.is_array(), "row must be an array of integers");
    std::vector<long> out;
    for (const auto& v : j) {
        require(v.is_number_integer(), "row entries must be integers");
        out.push_back(v.get<long>());
    }
    return out;
}

} // namespace

json toJson(const Rational& q) { return toString(q); }

Rational rationalFromJson(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    require(j.is_string(), "rational must be a \"p/q\" string");
    return parseRational(j.get<std::string>());
}

json toJson(const DiscreteMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({{"pos", toJson(a.pos)}, {"weight", toJson(a.weight)}});
    return {{"atoms", atoms}};
}

DiscreteMeasure measureFromJson(const json& j) {
    const json& atoms = field(j, "atoms");
    require(atoms.is_array(), "'atoms' must be an array");
    std::vector<Atom> out;
    for (const auto& a : atoms) out.push_back({rationalFromJson(field(a, "pos")), rationalFromJson(field(a, "weight"))});
    return DiscreteMeasure(std::move(out));
}

json toJson(const MomentSequence& m) {
    json v = json::array();
    for (const auto& x : m.values) v.push_back(toJson(x));
    return {{"moments", v}, {"probability", m.probability}};
}

MomentSequence momentsFromJson(const json& j, int K) {
    require(K >= 0, "K must be non-negative");
    if (j.is_object() && j.contains("atoms")) {
        const DiscreteMeasure m = measureFromJson(j);
        MomentSequence out = measureMoments(m, K);
        out.probability = m.totalMass() == 1;
        return out;
    }
    const json& v = field(j, "moments");
    require(v.is_array(), "'moments' must be an array");
    require(static_cast<int>(v.size()) >= K + 1,
            "order mismatch: input has moments through " + std::to_string(static_cast<long>(v.size()) - 1) +
                ", K = " + std::to_string(K));
    MomentSequence out;
    for (int k = 0; k <= K; ++k) out.values.push_back(rationalFromJson(v[static_cast<std::size_t>(k)]));
    out.probability = j.value("probability", out.values[0] == 1);
    return out;
}

json toJson(const Profile& f) {
    json pieces = json::array();
    for (const auto& p : f.pieces())
        pieces.push_back({{"from", toJson(p.from)}, {"to", toJson(p.to)}, {"start", toJson(p.start)}, {"end", toJson(p.end)}});
    return {{"pieces", pieces}};
}

Profile profileFromJson(const json& j) {
    require(j.is_object(), "profile must be a JSON object");
    if (j.contains("constant")) return Profile::constant(rationalFromJson(j.at("constant")));
    if (j.contains("step")) {
        const json& s = j.at("step");
        return Profile::step(rationalFromJson(field(s, "height")), rationalFromJson(field(s, "at")));
    }
    const json& pieces = field(j, "pieces");
    require(pieces.is_array(), "'pieces' must be an array");
    std::vector<ProfilePiece> out;
    for (const auto& p : pieces)
        out.push_back({rationalFromJson(field(p, "from")), rationalFromJson(field(p, "to")),
                       rationalFromJson(field(p, "start")), rationalFromJson(field(p, "end"))});
    return Profile(std::move(out));
}

json toJson(const DecompositionMeasure& rho, const Multiplicities* mult) {
    json comps = json::array();
    for (const auto& [s, w] : rho.weights()) {
        json c = {{"signature", toString(s)}, {"weight", toJson(w)}};
        if (mult) {
            auto it = mult->find(s);
            if (it != mult->end()) c["multiplicity"] = toString(it->second);
        }
        comps.push_back(std::move(c));
    }
    return {{"group", std::string(1, seriesLetter(rho.system().series))}, {"rank", rho.system().rank}, {"components", comps}};
}

DecompositionMeasure decompositionFromJson(const json& j) {
    const Series s = parseSeries(field(j, "group").get<std::string>());
    const RootSystem sys{s, field(j, "rank").get<int>()};
    std::map<Signature, Rational> w;
    for (const auto& c : field(j, "components")) {
        const Signature sig = parseSignature(s, field(c, "signature").get<std::string>());
        require(sig.system() == sys, "component rank differs from the declared rank");
        w[sig] = rationalFromJson(field(c, "weight"));
    }
    return DecompositionMeasure(sys, std::move(w));
}

json toJson(const InterlacingChain& chain) {
    json rows = json::array();
    for (const auto& r : chain.rows) rows.push_back(r);
    return {{"mode", toString(chain.mode)}, {"top_column", chain.topColumn}, {"rows", rows}};
}

InterlacingChain chainFromJson(const json& j) {
    InterlacingChain c;
    c.mode = parseTilingMode(field(j, "mode").get<std::string>());
    c.topColumn = field(j, "top_column").get<int>();
    for (const auto& r : field(j, "rows")) c.rows.push_back(rowFromJson(r));
    return c;
}

json toJson(const InfDivParameters& c) {
    return {{"a_plus", toJson(c.aPlus)["moments"]},   {"a_minus", toJson(c.aMinus)["moments"]},
            {"b_plus", toJson(c.bPlus)["moments"]},   {"b_minus", toJson(c.bMinus)["moments"]},
            {"gamma_plus", toJson(c.gammaPlus)},      {"gamma_minus", toJson(c.gammaMinus)},
            {"support_plus", toJson(c.supportPlus)},  {"support_minus", toJson(c.supportMinus)}};
}

InfDivParameters infDivFromJson(const json& j, int K) {
    // Each of the four measures may be given as a moment list or as {"atoms": [...]}.
    auto measure = [&](const char* key) {
        const json& v = field(j, key);
        MomentSequence m = v.is_array() ? momentsFromJson(json{{"moments", v}}, K) : momentsFromJson(v, K);
        m.probability = false;
        return m;
    };
    InfDivParameters c;
    c.aPlus = measure("a_plus");
    c.aMinus = measure("a_minus");
    c.bPlus = measure("b_plus");
    c.bMinus = measure("b_minus");
    c.gammaPlus = rationalFromJson(j.value("gamma_plus", json("0")));
    c.gammaMinus = rationalFromJson(j.value("gamma_minus", json("0")));
    c.supportPlus = rationalFromJson(j.value("support_plus", json("0")));
    c.supportMinus = rationalFromJson(j.value("support_minus", json("0")));
    return c;
}

json toJson(const ExperimentReport& r) {
    json config = json::array();
    for (const auto& [k, v] : r.config) config.push_back({k, v});
    json rows = json::array();
    for (const auto& row : r.rows) {
        json o = {{"N", row.N},
                  {"k", row.k},
                  {"finite_value", toJson(row.finite)},
                  {"limit_value", toJson(row.limit)},
                  {"abs_error", toJson(row.absError)},
                  {"variance", toJson(row.variance)}};
        if (row.standardError) o["standard_error"] = formatDecimal(*row.standardError);
        rows.push_back(std::move(o));
    }
    return {{"experiment", r.experiment},
            {"config", config},
            {"seed", std::to_string(r.seed)},
            {"config_hash", configHash(r)},
            {"rows", rows}};
}

ExperimentReport reportFromJson(const json& j) {
    ExperimentReport r;
    r.experiment = field(j, "experiment").get<std::string>();
    for (const auto& kv : field(j, "config")) {
        require(kv.is_array() && kv.size() == 2, "config entries are [key, value] pairs");
        r.config.emplace_back(kv[0].get<std::string>(), kv[1].get<std::string>());
    }
    r.seed = std::stoull(field(j, "seed").get<std::string>());
    for (const auto& o : field(j, "rows")) {
        ReportRow row;
        row.N = field(o, "N").get<int>();
        row.k = field(o, "k").get<int>();
        row.finite = rationalFromJson(field(o, "finite_value"));
        row.limit = rationalFromJson(field(o, "limit_value"));
        row.absError = rationalFromJson(field(o, "abs_error"));
        row.variance = rationalFromJson(field(o, "variance"));
        if (o.contains("standard_error")) row.standardError = std::stod(o.at("standard_error").get<std::string>());
        r.rows.push_back(std::move(row));
    }
    if (j.contains("config_hash"))
        require(j.at("config_hash").get<std::string>() == configHash(r), "config hash does not match the config");
    return r;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string canonicalConfig(const ExperimentReport& r) {
    std::string out = "experiment=" + r.experiment + "\n";
    for (const auto& [k, v] : r.config) out += k + "=" + v + "\n";
    out += "seed=" + std::to_string(r.seed) + "\n";
    return out;
}

std::string configHash(const ExperimentReport& r) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonicalConfig(r))));
    return buf;
}

std::string formatDecimal(double v, int digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
    ensure(res.ec == std::errc(), "decimal formatting failed");
    return std::string(buf, res.ptr);
}

void writeCsv(std::ostream& os, const ExperimentReport& r) {
    os << "# experiment=" << r.experiment << " config_hash=fnv1a64:" << configHash(r) << " seed=" << r.seed
       << " precision=" << kCsvDigits << "\n";
    for (const auto& [k, v] : r.config) os << "# " << k << "=" << v << "\n";
    const bool se = !r.rows.empty() && r.rows.front().standardError.has_value();
    os << "N,k,finite_value,limit_value,abs_error,variance" << (se ? ",standard_error" : "") << "\n";
    for (const auto& row : r.rows) {
        os << row.N << ',' << row.k << ',' << formatDecimal(toDouble(row.finite)) << ','
           << formatDecimal(toDouble(row.limit)) << ',' << formatDecimal(toDouble(row.absError)) << ','
           << formatDecimal(toDouble(row.variance));
        if (se) os << ',' << formatDecimal(row.standardError.value_or(0.0));
        os << "\n";
    }
}

json loadJsonArg(const std::string& arg) {
    std::string text;
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        text = arg;
    } else {
        std::ifstream in(arg);
        require(in.good(), "cannot read '" + arg + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in '" + arg + "': " + e.what());
    }
}

void writeFileAtomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), "cannot write '" + tmp + "'");
        out << content;
        out.flush();
        require(out.good(), "write to '" + tmp + "' failed");
    }
    require(std::rename(tmp.c_str(), path.c_str()) == 0, "cannot move output into '" + path + "'");
}

} // namespace qfc::io
