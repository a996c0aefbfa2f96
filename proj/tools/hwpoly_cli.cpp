// hwpoly: command-line front end for the highest weight polynomial library.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "hwpoly/database.hpp"
#include "hwpoly/dimension.hpp"
#include "hwpoly/equations.hpp"
#include "hwpoly/error.hpp"
#include "hwpoly/expander.hpp"
#include "hwpoly/modular.hpp"
#include "hwpoly/tableaux.hpp"
#include "tableau_file.hpp"

using namespace hwpoly;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::uint64_t seed = 1;
    unsigned workers = 0;
    bool quiet = false;
};

FinderOptions finder_options(const Common& common, int height) {
    FinderOptions o;
    o.seed = common.seed;
    o.workers = common.workers;
    o.height = height;
    if (!common.quiet) {
        o.log = [](const std::string& msg) { std::cerr << msg << '\n'; };
        o.progress = [](std::uint64_t done, std::uint64_t total) {
            std::cerr << "  expand " << done << "/" << total << '\n';
        };
    }
    return o;
}

std::optional<Partition> weight_option(const std::string& text) {
    if (text.empty())
        return std::nullopt;
    return Partition::parse(text);
}

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
    cmd->add_option("--workers", common.workers, "Worker threads (0: all cores)")->capture_default_str();
    cmd->add_flag("--quiet", common.quiet, "No progress on stderr");
}

int run_tableaux(int d, int c, const std::string& weight, bool list) {
    auto shape = Partition::parse(weight);
    if (shape.size() != d * c)
        throw InvalidArgument("weight " + shape.to_string() + " is not a partition of d*c=" + std::to_string(d * c));
    TableauCounter counter(shape, d, c);
    const auto count = counter.count();
    std::cout << count << '\n';
    if (list)
        for (std::uint64_t id = 0; id < count; ++id)
            std::cout << id << ' ' << counter.unrank(id).filling_string() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Highest weight polynomials for plethysms S^d(S^c) and equations of GL-invariant families"};
    app.require_subcommand(1);
    Common common;

    int d = 0, c = 0, n = 0, height = 100, samples = 3;
    std::string weight, db_path, family_spec, in_file, out_file, kernel_dir;
    bool list = false, all_tableaux = false;

    auto* tab = app.add_subcommand("tableaux", "Count (or list) isobaric tableaux of a shape");
    tab->add_option("--d", d, "Degree d")->required();
    tab->add_option("--c", c, "Form degree c")->required();
    tab->add_option("--weight", weight, "Shape, e.g. 15,6,6,6")->required();
    tab->add_flag("--list", list, "Print every tableau with its id");

    auto* build = app.add_subcommand("build-db", "Expand basis tableaux into a database");
    build->add_option("--d", d, "Degree d")->required();
    build->add_option("--c", c, "Form degree c")->required();
    build->add_option("--n", n, "Largest number of rows (default d)");
    build->add_option("--weight", weight, "Only this weight");
    build->add_option("--db", db_path, "Database directory")->capture_default_str();
    build->add_flag("--all-tableaux", all_tableaux, "Expand every tableau, not only a basis");
    add_common(build, common);

    auto* expand = app.add_subcommand("expand", "Expand one tableau file into an HWP file");
    expand->add_option("--tableau", in_file, "Tableau file")->required();
    expand->add_option("--out", out_file, "Output HWP file")->required();
    add_common(expand, common);

    auto* find = app.add_subcommand("find-equations", "Isotypic decomposition of the degree-d ideal slice");
    find->add_option("--family", family_spec, "symmetroid:<m>, veronese or generic:<file>")->required();
    find->add_option("--n", n, "Number of variables")->required();
    find->add_option("--c", c, "Form degree (veronese; checked otherwise)");
    find->add_option("--d", d, "Degree of the equations")->required();
    find->add_option("--weight", weight, "Only this weight");
    find->add_option("--db", db_path, "Database directory (expansions are cached there)");
    find->add_option("--height", height, "Bound on sampled family parameters")->capture_default_str();
    find->add_option("--kernel-dir", kernel_dir, "Write every kernel polynomial into this directory");
    add_common(find, common);

    auto* dim = app.add_subcommand("dimension", "Dimensions of parameter space, ambient space and image");
    dim->add_option("--family", family_spec, "symmetroid:<m>, veronese or generic:<file>")->required();
    dim->add_option("--n", n, "Number of variables")->required();
    dim->add_option("--c", c, "Form degree (veronese)");
    dim->add_option("--height", height, "Bound on sampled family parameters")->capture_default_str();
    add_common(dim, common);

    auto* vdb = app.add_subcommand("verify-db", "Re-check every database file");
    vdb->add_option("--db", db_path, "Database directory")->required();

    auto* veq = app.add_subcommand("verify-equation", "Exact vanishing check of an HWP combination");
    veq->add_option("--hwp-combo", in_file, "HWP file")->required();
    veq->add_option("--family", family_spec, "symmetroid:<m>, veronese or generic:<file>")->required();
    veq->add_option("--n", n, "Number of variables")->required();
    veq->add_option("--samples", samples, "Number of family points")->capture_default_str();
    veq->add_option("--height", height, "Bound on sampled family parameters")->capture_default_str();
    add_common(veq, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*tab)
            return run_tableaux(d, c, weight, list);

        if (*build) {
            if (db_path.empty())
                db_path = "db";
            Database db(db_path);
            auto delta = build_database(db, d, c, n > 0 ? n : d, finder_options(common, height),
                                        weight_option(weight), all_tableaux);
            for (const auto& e : delta)
                std::cout << "added " << e.c << ' ' << e.d << ' ' << e.weight.to_string() << ' ' << e.tableau_id
                          << " terms=" << e.terms << '\n';
            std::cout << "entries " << db.entries().size() << " added " << delta.size() << '\n';
            return 0;
        }

        if (*expand) {
            auto t = cli::read_tableau_file(in_file);
            ExpandOptions eo;
            eo.seed = common.seed;
            eo.workers = common.workers;
            if (!common.quiet)
                eo.progress = [](std::uint64_t done, std::uint64_t total) {
                    std::cerr << "  expand " << done << "/" << total << '\n';
                };
            auto hwp = expand_hwv(t, eo);
            write_hwp_file(out_file, hwp);
            std::cout << "terms " << hwp.terms.size() << '\n';
            return 0;
        }

        if (*find) {
            auto family = Family::from_spec(family_spec, n, c);
            std::unique_ptr<Database> db;
            if (!db_path.empty())
                db = std::make_unique<Database>(db_path);
            std::vector<Basis> bases;
            auto reports = ideal_slice(d, family, db.get(), finder_options(common, height), weight_option(weight),
                                       &bases);
            for (const auto& r : reports)
                write_report(std::cout, r);
            if (!kernel_dir.empty()) {
                fs::create_directories(kernel_dir);
                for (std::size_t i = 0; i < reports.size(); ++i)
                    for (std::size_t k = 0; k < reports[i].kernel.size(); ++k) {
                        auto poly = kernel_polynomial(bases[i], reports[i].kernel[k]);
                        auto path = fs::path(kernel_dir) /
                                    (reports[i].weight.to_string('-') + "-" + std::to_string(k) + ".hwp");
                        write_hwp_file(path, poly);
                        if (!common.quiet)
                            std::cerr << "wrote " << path.string() << " (" << poly.terms.size() << " terms)\n";
                    }
            }
            return 0;
        }

        if (*dim) {
            auto family = Family::from_spec(family_spec, n, c);
            std::mt19937_64 rng(mix_seed(common.seed));
            auto rep = dimensions(family, rng, height);
            std::cout << "dim_V=" << rep.dim_v;
            if (rep.dim_v_sliced)
                std::cout << " dim_V_sliced=" << *rep.dim_v_sliced;
            std::cout << " dim_W=" << rep.dim_w << " dim_X=" << rep.dim_x << " fiber=" << rep.fiber;
            if (rep.fiber_sliced)
                std::cout << " fiber_sliced=" << *rep.fiber_sliced;
            std::cout << " codim=" << rep.codim() << '\n';
            return 0;
        }

        if (*vdb) {
            if (!fs::is_directory(db_path))
                throw DatabaseError("no database at " + db_path);
            Database db(db_path);
            auto rep = db.verify();
            for (const auto& issue : rep.issues) {
                std::cout << issue.file.string();
                if (issue.line)
                    std::cout << ':' << issue.line;
                std::cout << ": " << issue.message << '\n';
            }
            std::cout << (rep.ok() ? "ok " : "failed ") << rep.checked << " files\n";
            return rep.ok() ? 0 : 1;
        }

        if (*veq) {
            auto hwp = read_hwp_file(in_file);
            auto family = Family::from_spec(family_spec, n, hwp.c);
            std::mt19937_64 rng(mix_seed(common.seed));
            if (!vanishes_on(hwp, family, rng, samples, height)) {
                std::cout << "does not vanish\n";
                return 1;
            }
            std::cout << "vanishes at " << samples << " samples\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
