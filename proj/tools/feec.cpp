#include <feec/estimator.hpp>
#include <feec/io.hpp>
#include <feec/parallel.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <random>

using namespace feec;
using nlohmann::json;

namespace {

void write_report(const std::string& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw InputError("cannot write report file: " + path);
    out << j.dump(2) << "\n";
}

int cmd_dims(int n, int r, int k, const std::string& family, const std::string& variant)
{
    if (n < 0 || k < 0 || k > n) throw InputError("need 0 <= k <= n");
    SpaceTag tag;
    if (family == "trimmed") {
        if (r < 1) throw InputError("trimmed order must be >= 1");
        tag = SpaceTag::trimmed(r);
    } else if (family == "full") {
        if (r < 0) throw InputError("full order must be >= 0");
        tag = SpaceTag::full(r);
    } else {
        throw InputError("family must be \"trimmed\" or \"full\"");
    }
    Variant var;
    if (variant == "plain") var = Variant::Plain;
    else if (variant == "ring") var = Variant::Ring;
    else if (variant == "underline") var = Variant::Underline;
    else if (variant == "underline-ring") var = Variant::UnderlineRing;
    else throw InputError("variant must be plain, ring, underline, or underline-ring");

    long enumerated = local_basis(n, tag, k, var).dim();
    long formula = dim_space(n, k, tag, var);
    json out = {{"n", n},      {"r", r},        {"k", k},
                {"family", family}, {"variant", variant},
                {"enumerated", enumerated}, {"formula", formula},
                {"match", enumerated == formula}};
    if (var == Variant::Ring && family == "full") {
        long printed = dim_ring_full_printed(n, k, r);
        out["printed-formula"] = printed;
        out["printed-formula-matches"] = printed == enumerated;
    }
    std::cout << out.dump(2) << "\n";
    std::cout << (enumerated == formula
                      ? "dimension check: " + std::to_string(enumerated) + "/"
                            + std::to_string(formula) + " match\n"
                      : "dimension check: MISMATCH (enumerated "
                            + std::to_string(enumerated) + ", formula "
                            + std::to_string(formula) + ")\n");
    return 0;
}

int cmd_betti(const std::string& mesh_path, bool relative)
{
    Complex c = load_mesh(mesh_path);
    std::vector<int> simplicial = betti_numbers(c, relative);
    auto a = uniform_assignment(c, Family::Trimmed, 1);
    std::vector<int> whitney = cohomology_dims(a, relative);
    json out = {{"mesh", mesh_path},
                {"relative", relative},
                {"betti", simplicial},
                {"whitney-cohomology", whitney},
                {"match", simplicial == whitney}};
    std::cout << out.dump(2) << "\n";
    std::cout << (simplicial == whitney ? "cohomology check: match\n"
                                        : "cohomology check: MISMATCH\n");
    return 0;
}

int cmd_flux(const std::string& mesh_path, const std::string& spec_path, int r, int k,
             const std::string& form_path, long seed, bool random_exact, bool relative,
             const std::string& out_path, const std::string& report_path)
{
    Complex c = load_mesh(mesh_path);
    SequenceAssignment a = spec_path.empty()
                               ? uniform_assignment(c, Family::Trimmed, r)
                               : load_order_spec(spec_path, c);
    if (k < 1 || k > c.dim())
        throw InputError("flux needs a form degree between 1 and the mesh dimension");
    DofLayout Lk = make_layout(c, a, k, relative);
    GlobalForm omega;
    if (random_exact) {
        DofLayout Lkm1 = make_layout(c, a, k - 1, relative);
        GlobalForm xi = zero_form(Lkm1);
        std::mt19937 rng(static_cast<unsigned>(seed));
        std::uniform_int_distribution<int> num(-6, 6);
        for (auto& v : xi.coeff) v = rat_of(num(rng), 1 + (rng() % 4));
        RatMat D = assemble_global_d(Lkm1, Lk);
        omega = zero_form(Lk);
        for (int i = 0; i < D.rows(); ++i)
            for (int j = 0; j < D.cols(); ++j)
                if (xi.coeff[j] != 0) omega.coeff[i] += D(i, j) * xi.coeff[j];
    } else if (!form_path.empty()) {
        std::ifstream in(form_path);
        if (!in) throw InputError("cannot open form file: " + form_path);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InputError("malformed form JSON: " + std::string(e.what()));
        }
        omega = form_from_json(j, Lk);
    } else {
        throw InputError("flux needs either --form or --random-exact");
    }

    long solves_before = global_solve_count().load();
    FluxResult fr = full_reconstruct(omega);

    // residual of d xi = omega
    double num = 0;
    std::vector<LocalForm> diff;
    for (int t = 0; t < c.count(c.dim()); ++t)
        diff.push_back(localize(omega, t)
                       - exterior_derivative(localize(fr.xi_hi, t)));
    num = l2_norm_cells(c, diff);
    double den = std::max(1.0, l2_norm(omega));

    json report = {{"mesh", mesh_path},
                   {"k", k},
                   {"relative", relative},
                   {"residual", num / den},
                   {"harmonic-residual", fr.harmonic_residual},
                   {"levels", c.dim() - k + 1},
                   {"global-solves", global_solve_count().load() - solves_before},
                   {"dofs", fr.xi_hi.coeff.size()}};
    if (!out_path.empty()) write_report(out_path, form_to_json(fr.xi_hi));
    if (!report_path.empty()) write_report(report_path, report);
    std::cout << report.dump(2) << "\n";
    std::cout << "flux reconstruction: residual " << num / den << "\n";
    return 0;
}

int cmd_estimate(const std::string& mesh_path, int r, long seed,
                 const std::string& report_path)
{
    Complex c = load_mesh(mesh_path);
    CurlCurlProblem p = manufactured_problem(c, r, static_cast<unsigned>(seed));
    validate_problem(p);
    GlobalForm upsilon = solve_galerkin(p);
    GlobalForm sigma = reconstruct_sigma(p, upsilon);
    EstimatorReport rep = estimate(p, upsilon, sigma);

    bool reliable = !rep.true_error || rep.eta >= *rep.true_error - 1e-12;
    json report = {{"mesh", mesh_path},
                   {"r", r},
                   {"seed", seed},
                   {"eta", rep.eta},
                   {"element-contributions", rep.element2},
                   {"curl-residual", rep.curl_residual},
                   {"jump-max", rep.jump_max},
                   {"boundary-trace", rep.boundary_trace},
                   {"seconds", rep.seconds},
                   {"reliable", reliable}};
    if (rep.true_error) report["true-error"] = *rep.true_error;
    if (rep.identity_defect) report["identity-defect"] = *rep.identity_defect;
    if (rep.efficiency) report["efficiency"] = *rep.efficiency;
    if (!report_path.empty()) write_report(report_path, report);
    std::cout << report.dump(2) << "\n";
    std::cout << "estimator: eta = " << rep.eta;
    if (rep.true_error)
        std::cout << ", true error = " << *rep.true_error << ", reliability "
                  << (reliable ? "PASS" : "FAIL");
    std::cout << "\n";
    return reliable ? 0 : 2;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"finite element exterior calculus toolbox"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap the number of worker threads");

    auto* dims = app.add_subcommand("dims", "basis dimensions vs closed formulas");
    int n = 2, r = 1, k = 0;
    std::string family = "trimmed", variant = "plain";
    dims->add_option("--n", n, "simplex dimension")->required();
    dims->add_option("--r", r, "polynomial order")->required();
    dims->add_option("--k", k, "form degree")->required();
    dims->add_option("--family", family, "trimmed or full");
    dims->add_option("--variant", variant, "plain, ring, underline, underline-ring");

    auto* betti = app.add_subcommand("betti", "Betti numbers and discrete cohomology");
    std::string mesh_path;
    bool relative = false;
    betti->add_option("--mesh", mesh_path, "mesh JSON file")->required();
    betti->add_flag("--relative", relative, "relative to the boundary subcomplex");

    auto* flux = app.add_subcommand("flux", "flux reconstruction d xi = omega");
    std::string spec_path, form_path, out_path, report_path;
    long seed = 0;
    bool random_exact = false;
    flux->add_option("--mesh", mesh_path, "mesh JSON file")->required();
    flux->add_option("--order-spec", spec_path, "order spec JSON file");
    flux->add_option("--r", r, "uniform trimmed order (if no order spec)");
    flux->add_option("--k", k, "form degree of the input")->required();
    flux->add_option("--form", form_path, "input form JSON file");
    flux->add_option("--random-exact", seed, "seed for a random exact input");
    flux->add_flag("--relative", relative, "use boundary conditions");
    flux->add_option("--out", out_path, "write the potential xi as JSON");
    flux->add_option("--report", report_path, "write the residual report as JSON");

    auto* est = app.add_subcommand("estimate", "equilibrated curl-curl estimator");
    est->add_option("--mesh", mesh_path, "mesh JSON file")->required();
    est->add_option("--r", r, "Nedelec order")->required();
    est->add_option("--manufactured", seed, "manufactured problem seed")->required();
    est->add_option("--report", report_path, "write the report as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    random_exact = flux->count("--random-exact") > 0;

    if (threads > 0) set_thread_count(threads);
    try {
        if (dims->parsed()) return cmd_dims(n, r, k, family, variant);
        if (betti->parsed()) return cmd_betti(mesh_path, relative);
        if (flux->parsed())
            return cmd_flux(mesh_path, spec_path, r, k, form_path, seed, random_exact,
                            relative, out_path, report_path);
        if (est->parsed()) return cmd_estimate(mesh_path, r, seed, report_path);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const MathError& e) {
        std::cerr << "infeasible: " << e.what() << " (residual " << e.residual << ")\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
