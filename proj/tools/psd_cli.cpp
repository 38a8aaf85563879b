#include "psd/errors.hpp"
#include "psd/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace psd;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, CheckFailed = 1, UsageError = 2, NumericError = 3 };

json cjson(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json mjson(const Mat& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

json vjson(const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
    return out;
}

double number(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (s.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a number: '" + s + "'");
    }
}

// "a,b;c,d"
Mat parse_matrix(const std::string& text)
{
    const auto rows = split(text, ';');
    const auto n = static_cast<Eigen::Index>(rows.size());
    Mat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto cols = split(rows[i], ',');
        if (static_cast<Eigen::Index>(cols.size()) != n) throw ConfigError("--matrix: expected a square matrix");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = number(cols[j], "--matrix");
    }
    return m;
}

// "angle:re:im,angle:re:im"
BoundaryMeasure parse_atoms(const std::string& text, const std::string& what)
{
    BoundaryMeasure T;
    for (const auto& item : split(text, ',')) {
        const auto f = split(item, ':');
        if (f.size() < 2 || f.size() > 3) throw ConfigError(what + ": expected angle:re[:im], got '" + item + "'");
        T.atoms.push_back({BoundaryPoint(number(f[0], what)), cplx(number(f[1], what), f.size() == 3 ? number(f[2], what) : 0.0)});
    }
    return T;
}

cplx parse_point(const std::string& text, const std::string& what)
{
    const auto f = split(text, ',');
    if (f.size() != 2) throw ConfigError(what + ": expected x,y");
    return {number(f[0], what), number(f[1], what)};
}

GroupTag parse_group(const std::string& g)
{
    if (g == "sl2") return GroupTag::SL2;
    if (g == "sl3") return GroupTag::SL3;
    if (g == "soh") return GroupTag::SOH;
    throw ConfigError("--group: expected sl2, sl3 or soh");
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pseudodifferential distributions on the hyperbolic disk"};
    app.require_subcommand(1);

    // decompose
    auto* dec = app.add_subcommand("decompose", "Iwasawa and Cartan decompositions of a group element");
    std::string group = "sl2", matrixText;
    dec->add_option("--group", group, "sl2, sl3 or soh")->capture_default_str();
    dec->add_option("--matrix", matrixText, "rows separated by ';', entries by ','")->required();

    // cfunction
    auto* cf = app.add_subcommand("cfunction", "Harish-Chandra c-function and Plancherel density");
    double lre = 1.0, lim = 0.0;
    int mAlpha = 1, m2Alpha = 0;
    cf->add_option("--lambda", lre, "real part of lambda")->capture_default_str();
    cf->add_option("--lambda-im", lim, "imaginary part of lambda")->capture_default_str();
    cf->add_option("--m-alpha", mAlpha, "multiplicity of alpha")->capture_default_str();
    cf->add_option("--m-2alpha", m2Alpha, "multiplicity of 2 alpha")->capture_default_str();
    bool cfCsv = false;
    double cfFrom = 0.05, cfTo = 6.0;
    int cfCount = 120;
    cf->add_flag("--csv", cfCsv, "print a CSV table lambda,c_re,c_im,density over a real grid");
    cf->add_option("--from", cfFrom, "first lambda of the CSV grid")->capture_default_str();
    cf->add_option("--to", cfTo, "last lambda of the CSV grid")->capture_default_str();
    cf->add_option("--count", cfCount, "number of CSV rows")->capture_default_str()->check(CLI::PositiveNumber);

    // transform
    auto* tr = app.add_subcommand("transform", "Fourier transform round trip of a bump function");
    double bumpRadius = 1.5;
    std::string probeText = "0.2,0.1";
    FourierConfig fc;
    tr->add_option("--radius", bumpRadius, "bump support radius")->capture_default_str();
    tr->add_option("--probe", probeText, "disk point x,y")->capture_default_str();
    tr->add_option("--Lambda", fc.Lambda, "spectral cutoff")->capture_default_str();
    tr->add_option("--n-lambda", fc.nLambda, "spectral nodes")->capture_default_str();
    tr->add_option("--n-b", fc.nB, "boundary nodes")->capture_default_str();
    tr->add_option("--n-radial", fc.nRadial, "radial disk nodes")->capture_default_str();
    tr->add_option("--n-angular", fc.nAngular, "angular disk nodes")->capture_default_str();
    std::string savePath;
    tr->add_option("--save", savePath, "write the Fourier data as JSON");

    // ps
    auto* ps = app.add_subcommand("ps", "Patterson-Sullivan distribution and the intertwining check");
    double psLambda = 2.0, psMu = 2.0, symRadius = 1.5;
    std::string phi = "0:1", psi = "3.141592653589793:1", symbol = "bump", centerText = "0.1,0.05";
    verify::PSGridSizes psg;
    ps->add_option("--lambda", psLambda)->capture_default_str();
    ps->add_option("--mu", psMu)->capture_default_str();
    ps->add_option("--phi", phi, "atoms angle:re:im,...")->capture_default_str();
    ps->add_option("--psi", psi, "atoms angle:re:im,...")->capture_default_str();
    ps->add_option("--symbol", symbol, "bump or gaussian")->capture_default_str();
    ps->add_option("--center", centerText, "symbol center x,y")->capture_default_str();
    ps->add_option("--radius", symRadius, "bump radius or gaussian width")->capture_default_str();
    ps->add_option("--line-panels", psg.linePanels)->capture_default_str();
    ps->add_option("--line-order", psg.lineOrder)->capture_default_str();
    ps->add_option("--disk-radial", psg.diskRadial)->capture_default_str();
    ps->add_option("--disk-angular", psg.diskAngular)->capture_default_str();

    // verify
    auto* ver = app.add_subcommand("verify", "Run a numerical verification suite");
    std::string suite, configPath, outPath;
    std::vector<std::string> formats;
    std::uint64_t seed = verify::kDefaultSeed;
    ver->add_option("--suite", suite, "iwasawa, brackets, spectral, inversion, intertwining, counterexample or all");
    ver->add_option("--config", configPath, "JSON config file");
    auto* seedOpt = ver->add_option("--seed", seed, "random seed");
    ver->add_option("--out", outPath, "output directory");
    ver->add_option("--format", formats, "json, csv, svg (repeatable)");

    // counterexample-sl3
    auto* ce = app.add_subcommand("counterexample-sl3", "Evaluate the SL3 projections of n w");
    double d = 1.0, e = 1.0, f = 1.0;
    ce->add_option("--d", d)->capture_default_str();
    ce->add_option("--e", e)->capture_default_str();
    ce->add_option("--f", f)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? Ok : UsageError;
    }

    try {
        if (*dec) {
            const GroupTag tag = parse_group(group);
            const GroupElement g(parse_matrix(matrixText), tag);
            const auto kan = iwasawa_kan(g);
            const auto nak = iwasawa_nak(g);
            json out{{"group", std::string(tag_name(tag))},
                     {"kan", {{"k", mjson(kan.k)}, {"aLog", vjson(kan.aLog)}, {"n", mjson(kan.n)}}},
                     {"nak", {{"n", mjson(nak.n)}, {"aLog", vjson(nak.aLog)}, {"k", mjson(nak.k)}}},
                     {"H", vjson(iwasawa_H(g))}};
            if (tag != GroupTag::SOH) {
                const auto kak = cartan_kak(g);
                out["kak"] = {{"k1", mjson(kak.k1)}, {"aLog", vjson(kak.aLog)}, {"k2", mjson(kak.k2)}};
            }
            print(out);
            return Ok;
        }
        if (*cf) {
            const RootDatum roots = RootDatum::rank_one(mAlpha, m2Alpha);
            if (cfCsv) {
                std::cout.precision(17);
                std::cout << "lambda,c_re,c_im,density\n";
                for (int k = 0; k < cfCount; ++k) {
                    const double l = cfCount == 1 ? cfFrom : cfFrom + (cfTo - cfFrom) * k / (cfCount - 1);
                    const cplx c = c_function(l, roots);
                    std::cout << l << "," << c.real() << "," << c.imag() << "," << plancherel_density(l, roots) << "\n";
                }
                return Ok;
            }
            const cplx l(lre, lim);
            json out{{"lambda", cjson(l)}, {"c", cjson(c_function(l, roots))}, {"eigenvalue", cjson(laplace_eigenvalue(l, roots))}};
            if (lim == 0.0) out["plancherel_density"] = plancherel_density(lre, roots);
            print(out);
            return Ok;
        }
        if (*tr) {
            const DiskPoint z(parse_point(probeText, "--probe"));
            auto grid = std::make_shared<const DiskQuadrature>(disk_quadrature(bumpRadius, fc.nRadial, fc.nAngular, RadialRule::GaussLegendre));
            const auto fn = bump(bumpRadius);
            const auto F = helgason_ft(SampledFunctionX::sample(grid, fn, bumpRadius), midpoint_grid(fc.Lambda, fc.nLambda),
                                       circle_quadrature(fc.nB));
            const cplx back = helgason_inverse(F)(z);
            if (!savePath.empty()) {
                std::ofstream out(savePath);
                if (!out) throw ConfigError(savePath + ": cannot write");
                out << json(F).dump() << "\n";
            }
            print({{"probe", cjson(z.z())}, {"f", cjson(fn(z))}, {"inverse", cjson(back)}, {"error", std::abs(back - fn(z))}});
            return Ok;
        }
        if (*ps) {
            const DiskPoint c(parse_point(centerText, "--center"));
            SymbolFn a;
            if (symbol == "bump") a = bump_symbol(c, symRadius);
            else if (symbol == "gaussian") a = gaussian_symbol(c, symRadius);
            else throw ConfigError("--symbol: expected bump or gaussian");
            const PSData data{psLambda, psMu, parse_atoms(phi, "--phi"), parse_atoms(psi, "--psi")};
            data.Tphi.validate();
            data.Tpsi.validate();
            const auto r = verify::PSGridSizes{psg}.grids();
            const auto rec = intertwine_check(a, data, r);
            print({{"lhs", cjson(rec.lhs)},
                   {"rhs", cjson(rec.rhs)},
                   {"residual", rec.residual},
                   {"config",
                    {{"lambda", psLambda},
                     {"mu", psMu},
                     {"symbol", symbol},
                     {"center", cjson(c.z())},
                     {"radius", symRadius},
                     {"grids",
                      {{"linePanels", psg.linePanels}, {"lineOrder", psg.lineOrder}, {"diskRadial", psg.diskRadial}, {"diskAngular", psg.diskAngular}}}}}});
            return Ok;
        }
        if (*ver) {
            verify::SuiteConfig cfg = configPath.empty() ? verify::SuiteConfig{} : verify::load_config(configPath);
            if (!suite.empty()) cfg.suite = suite;
            if (*seedOpt) cfg.seed = seed;
            if (!outPath.empty()) cfg.outputPath = outPath;
            for (const auto& fmt : formats) {
                if (fmt == "json") cfg.formats.insert(verify::Format::Json);
                else if (fmt == "csv") cfg.formats.insert(verify::Format::Csv);
                else if (fmt == "svg") cfg.formats.insert(verify::Format::Svg);
                else throw ConfigError("--format: unknown format '" + fmt + "'");
            }
            cfg.validate();
            const auto report = verify::run_suite(cfg);
            const auto files = verify::emit_artifacts(report, cfg);
            for (const auto& c : report.checks)
                std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << "  residual=" << c.residual << "  tol=" << c.tolerance << "\n";
            std::cout << report.passed() << "/" << report.checks.size() << " checks passed in " << report.wallTime << " s\n";
            for (const auto& p : files) std::cout << "wrote " << p.string() << "\n";
            return report.all_pass() ? Ok : CheckFailed;
        }
        if (*ce) {
            Vec p(3);
            p << d, e, f;
            const auto rec = check_Hnw_symmetry(GroupTag::SL3, p);
            print({{"d", d}, {"e", e}, {"f", f}, {"s", rec.s}, {"s_prime", rec.sPrime}, {"gap", rec.residual}, {"half_ln_3_over_2", 0.5 * std::log(1.5)}});
            return Ok;
        }
    } catch (const ConfigError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return UsageError;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return NumericError;
    }
    return Ok;
}
