#pragma once

// The k3cover command line: subcommands over JSON files, exit codes
// 0 (success), 1 (mathematical failure), 2 (usage or input error), and a run
// manifest written next to every run.

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "serialize.hpp"

namespace k3cover::cli {

using io::json;

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kOk = 0;
inline constexpr int kMathFailure = 1;
inline constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &n, EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < n; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return os.str();
}

struct FileDigest {
    std::string path;
    std::string sha256;
};

struct RunManifest {
    std::string command;
    std::vector<std::string> args;
    std::vector<FileDigest> inputs;
    SweepCaps caps;
    std::string version = kVersion;
    int exit_code = 0;
    std::string summary;
    std::vector<FileDigest> outputs;
};

inline json to_json(const RunManifest& m) {
    auto files = [](const std::vector<FileDigest>& v) {
        json a = json::array();
        for (const auto& f : v) a.push_back(json{{"path", f.path}, {"sha256", f.sha256}});
        return a;
    };
    return json{{"kind", "run_manifest"},
                {"command", m.command},
                {"args", m.args},
                {"inputs", files(m.inputs)},
                {"caps", json{{"y0", m.caps.y0}, {"alpha", m.caps.alpha}, {"prime", m.caps.prime}}},
                {"version", m.version},
                {"outcome", json{{"exit_code", m.exit_code}, {"summary", m.summary}}},
                {"outputs", files(m.outputs)}};
}

inline RunManifest manifest_from_json(const json& j) {
    using io::detail::at;
    using io::detail::get;
    using io::detail::need;
    io::detail::expect_kind(j, "run_manifest", "");
    RunManifest m;
    m.command = get<std::string>(need(j, "command", ""), "command");
    m.args = get<std::vector<std::string>>(need(j, "args", ""), "args");
    auto files = [&](const std::string& key) {
        std::vector<FileDigest> out;
        const json& a = io::detail::need_array(need(j, key, ""), key);
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string p = at(key, i);
            out.push_back({get<std::string>(need(a[i], "path", p), at(p, "path")),
                           get<std::string>(need(a[i], "sha256", p), at(p, "sha256"))});
        }
        return out;
    };
    m.inputs = files("inputs");
    const json& caps = need(j, "caps", "");
    m.caps.y0 = get<long>(need(caps, "y0", "caps"), "caps.y0");
    m.caps.alpha = get<long>(need(caps, "alpha", "caps"), "caps.alpha");
    m.caps.prime = get<std::uint64_t>(need(caps, "prime", "caps"), "caps.prime");
    m.version = get<std::string>(need(j, "version", ""), "version");
    const json& oc = need(j, "outcome", "");
    m.exit_code = get<int>(need(oc, "exit_code", "outcome"), "outcome.exit_code");
    m.summary = get<std::string>(need(oc, "summary", "outcome"), "outcome.summary");
    m.outputs = files("outputs");
    return m;
}

/// "y0=50,alpha=200,prime=500"; any subset, in any order.
inline SweepCaps parse_caps(const std::string& spec, SweepCaps caps = {}) {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw UsageError("--caps: entry '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        long long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoll(val, &used);
            if (used != val.size() || v <= 0) throw std::invalid_argument(val);
        } catch (const std::exception&) {
            throw UsageError("--caps: key '" + key + "' needs a positive integer, got '" + val + "'");
        }
        if (key == "y0")
            caps.y0 = v;
        else if (key == "alpha")
            caps.alpha = v;
        else if (key == "prime")
            caps.prime = static_cast<std::uint64_t>(v);
        else
            throw UsageError("--caps: unknown key '" + key + "'");
    }
    return caps;
}

/// "2,3/2,1,69/8"
inline WP3Point parse_point(const std::string& s) {
    std::vector<TowerElement> c;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            c.emplace_back(Rational::parse(item));
        } catch (const std::exception&) {
            throw UsageError("--point: coordinate '" + item + "' is not a rational");
        }
    }
    if (c.size() != 4) throw UsageError("--point: expected four coordinates x,y,z,w");
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero()) throw UsageError("--point: x, y, z all zero");
    return WP3Point(c[0], c[1], c[2], c[3]);
}

namespace detail {

struct Run {
    RunManifest manifest;
    std::ostream& out;
    std::ostream& err;

    std::string read(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError(path + ": cannot open");
        std::stringstream ss;
        ss << in.rdbuf();
        std::string bytes = ss.str();
        manifest.inputs.push_back({path, sha256_hex(bytes)});
        return bytes;
    }

    json read_json(const std::string& path) {
        const std::string bytes = read(path);
        try {
            return json::parse(bytes);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(path + ": invalid JSON: " + e.what());
        }
    }

    void emit(const json& doc, const std::string& path) {
        const std::string text = doc.dump(2) + "\n";
        if (path.empty()) {
            out << text;
            return;
        }
        std::ofstream o(path, std::ios::binary);
        if (!o) throw UsageError(path + ": cannot write");
        o << text;
        manifest.outputs.push_back({path, sha256_hex(text)});
    }
};

/// Parses a file with `fn`, prefixing parse diagnostics with the file name.
template <class F>
auto parse_file(Run& run, const std::string& path, F fn) {
    json j = run.read_json(path);
    try {
        return fn(j);
    } catch (const io::ParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(path + ": " + e.what());
    }
}

inline std::pair<std::uint64_t, int> prime_power(std::uint64_t q) {
    if (q < 2) throw UsageError("--q: " + std::to_string(q) + " is not a prime power");
    std::uint64_t p = 2;
    while (p * p <= q && q % p != 0) ++p;
    if (q % p != 0) p = q;
    int k = 0;
    std::uint64_t r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    if (r != 1) throw UsageError("--q: " + std::to_string(q) + " is not a prime power");
    return {p, k};
}

}  // namespace detail

inline int run_command(const std::vector<std::string>& argv, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
    CLI::App app{"Certificates of infinitely many points on degree-2 K3 surfaces", "k3cover"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::string caps_spec, manifest_path;
    app.add_option("--caps", caps_spec, "sweep caps, e.g. y0=50,alpha=200,prime=500");
    app.add_option("--manifest", manifest_path, "run manifest path (default: <output>.manifest.json or k3cover.manifest.json)");

    std::string input, input2, output, mode = "bound12", h_file, mprime_file, normalize_file, mod3_file, point_spec;
    int npoints = 10;
    std::uint64_t q = 3;

    auto* smooth = app.add_subcommand("smooth", "smoothness of the branch sextic");
    smooth->add_option("surface", input, "surface.json")->required();
    smooth->add_option("-o,--output", output);

    auto* tangent = app.add_subcommand("tangent", "branch point with its tangent line");
    tangent->add_option("surface", input, "surface.json")->required();
    tangent->add_option("-o,--output", output);

    auto* count = app.add_subcommand("count", "number of points over F_q");
    count->add_option("surface", input, "surface.json")->required();
    count->add_option("--q", q, "prime power")->required();
    count->add_option("-o,--output", output);

    auto* certify = app.add_subcommand("certify", "certificate of infinitely many points");
    certify->add_option("surface", input, "surface.json")->required();
    certify->add_option("--mode", mode)->check(CLI::IsMember({"bound12", "rational"}));
    certify->add_option("-o,--output", output);

    auto* points = app.add_subcommand("points", "points from a certificate");
    points->add_option("certificate", input, "cert.json")->required();
    points->add_option("-n", npoints)->check(CLI::PositiveNumber);
    points->add_option("-o,--output", output);

    auto* verify = app.add_subcommand("verify", "independent check of a certificate");
    verify->add_option("certificate", input, "cert.json")->required();
    verify->add_option("-o,--output", output);

    auto* torsion = app.add_subcommand("torsion", "torsion certificate of a point");
    torsion->add_option("curve", input, "curve.json")->required();
    torsion->add_option("point", input2, "point.json")->required();
    torsion->add_option("-o,--output", output);

    auto* family = app.add_subcommand("family", "the explicit family X_h");
    family->set_help_flag("--help", "print this help message and exit");
    auto* fh = family->add_option("--h", h_file, "sextic h as JSON; writes X_h");
    auto* fm = family->add_option("--check-mprime", mprime_file, "membership in the locked family");
    auto* fn = family->add_option("--normalize", normalize_file, "normalization into the locked family");
    auto* f3 = family->add_option("--mod3", mod3_file, "mod-3 smoothness certificate of X_h");
    fh->excludes(fm, fn, f3);
    fm->excludes(fn, f3);
    fn->excludes(f3);
    family->add_option("-o,--output", output);

    auto* density = app.add_subcommand("density", "two-fibration density check on w^2 = x^6 + y^6 - z^6");
    density->add_option("--point", point_spec, "x,y,z,w with rational entries")->required();
    density->add_option("-o,--output", output);

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    if (family->parsed() && h_file.empty() && mprime_file.empty() && normalize_file.empty() && mod3_file.empty()) {
        err << "usage error: family needs one of --h, --check-mprime, --normalize, --mod3\n";
        return kUsage;
    }

    detail::Run run{RunManifest{}, out, err};
    run.manifest.command = app.get_subcommands().front()->get_name();
    run.manifest.args = argv;
    int code = kOk;
    std::string summary;
    auto fail = [&](int c, const std::string& msg) {
        code = c;
        summary = msg;
        err << msg << "\n";
    };

    try {
        run.manifest.caps = parse_caps(caps_spec);
        const SweepCaps& caps = run.manifest.caps;
        auto surface = [&](const std::string& path) {
            return detail::parse_file(run, path, [](const json& j) { return io::surface_from_json(j); });
        };

        if (smooth->parsed()) {
            const auto x = surface(input);
            const auto r = is_smooth_sextic(x);
            run.emit(io::to_json(r), output);
            if (r.smooth)
                summary = "smooth (" + r.method + ")";
            else
                fail(kMathFailure, "singular: " + r.witness);
        } else if (tangent->parsed()) {
            const auto x = surface(input);
            const auto d = branch_point_search(x, caps.y0);
            run.emit(json{{"kind", "tangency_datum"}, {"tower", io::to_json(d.field)}, {"datum", io::to_json(d)}}, output);
            summary = "branch point over a field of degree " + std::to_string(d.field.degree());
        } else if (count->parsed()) {
            const auto x = surface(input);
            const auto [p, k] = detail::prime_power(q);
            const Integer n = count_points_Fq(x, p, k);
            run.emit(json{{"kind", "point_count"}, {"q", q}, {"count", n.get_str()}}, output);
            summary = "#X(F_" + std::to_string(q) + ") = " + n.get_str();
        } else if (certify->parsed()) {
            const auto x = surface(input);
            if (mode == "rational") {
                const auto c = certify_rational(x, caps);
                run.emit(io::to_json(c), output);
                summary = "rational certificate, s = " + c.s.str();
            } else {
                const auto c = certify_bound12(x, caps);
                run.emit(io::to_json(c), output);
                summary = "extension certificate, [L:K] = " + std::to_string(c.degree_over_base());
            }
        } else if (points->parsed() || verify->parsed()) {
            json j = run.read_json(input);
            const std::string kind = j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
            auto parse = [&](auto fn) {
                try {
                    return fn(j);
                } catch (const io::ParseError& e) {
                    throw UsageError(input + ": " + e.what());
                } catch (const std::invalid_argument& e) {
                    throw UsageError(input + ": " + e.what());
                }
            };
            Verification v;
            if (kind == "extension_certificate") {
                const auto c = parse([](const json& d) { return io::extension_certificate_from_json(d); });
                if (points->parsed()) {
                    run.emit(io::points_document(enumerate_points(c, npoints), false), output);
                    summary = std::to_string(npoints) + " points";
                } else {
                    v = verify_certificate(c);
                }
            } else if (kind == "rational_certificate") {
                const auto c = parse([](const json& d) { return io::rational_certificate_from_json(d); });
                if (points->parsed()) {
                    const auto r = enumerate_points(c, npoints);
                    run.emit(io::points_document(r.points, r.on_rescaled), output);
                    summary = std::to_string(r.points.size()) + " points" + (r.on_rescaled ? " on the rescaled surface" : "");
                } else {
                    v = verify_certificate(c);
                }
            } else {
                throw UsageError(input + ": kind: expected \"extension_certificate\" or \"rational_certificate\"");
            }
            if (verify->parsed()) {
                run.emit(io::to_json(v), output);
                if (v.ok) {
                    summary = "verified";
                } else {
                    std::string msg = "verification failed:";
                    for (const auto& r : v.reasons) msg += " " + r + ";";
                    fail(kMathFailure, msg);
                }
            }
        } else if (torsion->parsed()) {
            const Curve e = detail::parse_file(run, input, [](const json& j) { return io::curve_document_from_json(j); });
            const Point p = detail::parse_file(run, input2, [&](const json& j) {
                io::detail::expect_kind(j, "point", "");
                return io::point_from_json(j, e.field(), "");
            });
            if (!e.contains(p)) throw UsageError(input2 + ": point is not on the curve");
            TorsionOptions opt;
            opt.prime_cap = caps.prime;
            const auto c = torsion_certificate(e, p, opt);
            run.emit(io::to_json(c), output);
            if (c.is_torsion())
                fail(kMathFailure, "torsion: order " + std::to_string(c.order));
            else
                summary = "NonTorsion (" + c.method + ")";
        } else if (family->parsed()) {
            if (!h_file.empty()) {
                const Form h = detail::parse_file(run, h_file, [](const json& j) {
                    io::detail::expect_kind(j, "sextic", "");
                    return io::form_terms_from_json(io::detail::need(j, "h", ""), TowerField(), 3, "h", 6);
                });
                run.emit(io::to_json(build_Xh(h)), output);
                summary = "X_h written";
            } else if (!mprime_file.empty()) {
                const bool m = mprime_membership(surface(mprime_file));
                run.emit(json{{"kind", "mprime_membership"}, {"member", m}}, output);
                if (m)
                    summary = "member";
                else
                    fail(kMathFailure, "not in the locked family");
            } else if (!normalize_file.empty()) {
                const auto x = surface(normalize_file);
                const auto d = branch_point_search(x, caps.y0);
                const auto [t, n] = normalize_to_mprime(x, d);
                run.emit(io::to_json(t, n), output);
                summary = "normalized over a field of degree " + std::to_string(t.field.degree());
            } else {
                const auto c = smooth_mod3(surface(mod3_file));
                run.emit(io::to_json(c), output);
                summary = "smooth mod 3";
            }
        } else if (density->parsed()) {
            const WP3Point p = parse_point(point_spec);
            if (!on_surface(surface_Y(), p)) throw UsageError("--point: not on w^2 = x^6 + y^6 - z^6");
            const auto r = density_check(p);
            run.emit(io::to_json(r), output);
            if (r.criteria_met)
                summary = r.verdict;
            else
                fail(kMathFailure, r.verdict);
        }
    } catch (const UsageError& e) {
        fail(kUsage, std::string("usage error: ") + e.what());
    } catch (const CertificationFailure& e) {
        std::string msg = std::string("inconclusive: ") + e.what();
        for (const auto& r : e.reasons()) msg += "\n  " + r;
        fail(kMathFailure, msg);
    } catch (const SearchExhausted& e) {
        std::string msg = std::string("inconclusive: ") + e.what();
        for (const auto& r : e.reasons()) msg += "\n  " + r;
        fail(kMathFailure, msg);
    } catch (const std::exception& e) {
        fail(kMathFailure, std::string("failed: ") + e.what());
    }

    run.manifest.exit_code = code;
    run.manifest.summary = summary;
    if (manifest_path.empty()) manifest_path = output.empty() ? "k3cover.manifest.json" : output + ".manifest.json";
    std::ofstream mf(manifest_path, std::ios::binary);
    if (mf) mf << to_json(run.manifest).dump(2) << "\n";
    else err << "warning: cannot write manifest " << manifest_path << "\n";
    return code;
}

}  // namespace k3cover::cli
