#include "odemin/report.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

using namespace odemin;

namespace {

struct Args {
    std::string task, input;
    uint64_t prime = kDefaultPrime;
    std::optional<int> max_terms, order;
    bool relaxed = false, text = false, json = false, no_certify = false;
    int threads = 1;
};

template <class T>
void env_default(const char* name, T& out)
{
    if (const char* v = std::getenv(name)) {
        try {
            out = (T)std::stoull(v);
        } catch (const std::exception&) {
            throw ValidationError(std::string("bad value for ") + name + ": " + v);
        }
    }
}

double ms_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

int run(const Args& a)
{
    auto t0 = std::chrono::steady_clock::now();
    ProblemSpec spec = parseProblem(a.input);
    MinimizeOptions mo;
    mo.prime = a.prime;
    mo.max_terms = a.max_terms;
    mo.certify = !a.no_certify;
    mo.relaxed = a.relaxed;
    mo.threads = a.threads;

    Json rep;
    rep["task"] = a.task;
    rep["input"] = problemJson(spec);
    rep["prime"] = a.prime;
    int status = 0;
    if (a.task == "minimize") {
        auto r = minimalRightFactor(spec.L, spec.ini, mo);
        rep["result"] = minimizeJson(r);
        if (r.capped) status = 3;
    } else if (a.task == "inhom") {
        auto m = minimalRightFactor(spec.L, spec.ini, mo);
        auto S = seriesOf(spec.L, spec.ini, 64 + 2 * spec.L.order());
        auto h = minimalInhomogeneous(m.M, initialFromSeries(m.M, S));
        rep["minimal"] = minimizeJson(m);
        rep["result"] = inhomJson(h);
        if (m.capped) status = 3;
    } else if (a.task == "exc-values") {
        auto v = algebraicValues(spec.L, spec.ini, mo);
        rep["result"] = valuesJson(v);
        if (v.minimal.capped) status = 3;
    } else if (a.task == "exc") {
        rep["result"] = exceptionalJson(exceptionalSet(spec.L, spec.ini, mo));
    } else if (a.task == "decompose") {
        DecomposeOptions d;
        d.minimize = mo;
        rep["result"] = decompositionJson(canonicalDecomposition(spec.L, spec.ini, d));
    } else if (a.task == "bounds") {
        BoundOptions bo;
        bo.relaxed = a.relaxed;
        Json arr = Json::array();
        auto sites = singularSiteList(spec.L);
        int r = spec.L.order();
        for (int m = 1; m < r; ++m) {
            if (a.order && *a.order != m) continue;
            arr.push_back(boundsJson(boundDegreeCoeffs(spec.L, sites, m, bo)));
        }
        if (a.order && (*a.order < 1 || *a.order >= r)) throw ValidationError("--order must lie in [1, " + std::to_string(r - 1) + "]");
        rep["result"] = arr;
    }
    double ms = ms_since(t0);
    if (a.text) {
        std::cout << reportText(rep);
        std::cout << "elapsed_ms: " << (long)ms << "\n";
    } else {
        // timings stay out of the JSON so equal inputs give equal bytes
        std::cout << rep.dump(1) << "\n";
        std::cerr << "elapsed_ms: " << (long)ms << "\n";
    }
    return status;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Minimal annihilators and algebraic values of D-finite power series"};
    Args a;
    try {
        env_default("ODEMIN_PRIME", a.prime);
        env_default("ODEMIN_THREADS", a.threads);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    int max_terms = 0, order = 0;
    app.add_option("task", a.task, "minimize | inhom | exc | exc-values | decompose | bounds")
        ->required()
        ->check(CLI::IsMember({"minimize", "inhom", "exc", "exc-values", "decompose", "bounds"}));
    app.add_option("--input", a.input, "problem JSON file")->required();
    app.add_option("--prime", a.prime, "search prime (env ODEMIN_PRIME)");
    auto* mt = app.add_option("--max-terms", max_terms, "series precision cap");
    app.add_flag("--relaxed-ilp", a.relaxed, "relaxed 0-1 programs for the degree bounds");
    auto* ord = app.add_option("--order", order, "order m for the bounds task");
    auto* js = app.add_flag("--json", a.json, "JSON output (default)");
    app.add_flag("--text", a.text, "text output")->excludes(js);
    app.add_option("--threads", a.threads, "worker threads (env ODEMIN_THREADS)");
    app.add_flag("--no-certify", a.no_certify, "stop at the first factor without proving minimality");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (*mt) a.max_terms = max_terms;
    if (*ord) a.order = order;
    try {
        if (a.threads < 1) throw ValidationError("--threads must be positive");
        if (a.prime >= (1ull << 31) || !is_prime_u64(a.prime)) throw ValidationError("--prime must be a prime below 2^31");
        return run(a);
    } catch (const ValidationError& e) {
        std::cerr << "error [" << a.task << "]: " << e.what() << "\n";
        return 2;
    } catch (const BadPrime& e) {
        std::cerr << "error [" << a.task << "]: " << e.what() << "; choose another --prime\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource limit [" << a.task << "]: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error [" << a.task << "]: " << e.what() << "\n";
        return 1;
    }
}
