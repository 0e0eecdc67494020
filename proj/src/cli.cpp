#include "mrspec/cli.hpp"

#include "mrspec/oracle.hpp"
#include "mrspec/spectrum.hpp"
#include "mrspec/table1.hpp"
#include "mrspec/wavefun.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace mrspec::cli {

void RunConfig::validate() const
{
    if (precision < 1 || precision > 17) {
        throw std::invalid_argument("precision must lie in [1, 17], got " +
                                    std::to_string(precision));
    }
    if (jobs < 1) {
        throw std::invalid_argument("jobs must be >= 1");
    }
}

namespace {

using json = nlohmann::json;

class usage_error : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- formatting

std::string fixed(double v, int decimals)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(decimals) << v;
    return s.str();
}

std::string sci(double v)
{
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << v;
    return s.str();
}

std::string full(double v)
{
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

std::string key3(double v)
{
    return fixed(v, 3);
}

/// Rows of strings rendered either as aligned text or as CSV.
struct Sheet
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream& out, OutputFormat format) const
    {
        if (format == OutputFormat::Csv) {
            auto line = [&](std::vector<std::string> const& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    out << (i ? "," : "") << cells[i];
                }
                out << '\n';
            };
            line(header);
            for (auto const& r : rows) {
                line(r);
            }
            return;
        }
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) {
            width[i] = header[i].size();
            for (auto const& r : rows) {
                width[i] = std::max(width[i], r[i].size());
            }
        }
        auto line = [&](std::vector<std::string> const& cells) {
            std::string text;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i) {
                    text += "  ";
                }
                text += std::string(width[i] - cells[i].size(), ' ') + cells[i];
            }
            out << text << '\n';
        };
        line(header);
        for (auto const& r : rows) {
            line(r);
        }
    }
};

void write_json(std::ostream& out, json const& doc)
{
    out << doc.dump(2) << '\n';
}

// ------------------------------------------------------------------- options

struct PhysicsFlags
{
    std::optional<double> A;
    std::optional<double> A_over_b;
    std::optional<double> b;
    std::optional<double> inv_b;
    double alpha{0.0};
    double mu{1.0};
    double hbar{1.0};
    int dim{3};
    std::string states;
    std::string n_range;
    std::string l_range;
};

struct Options
{
    PhysicsFlags phys;
    RunConfig run;
    std::string format{"text"};

    // wavefunction
    int samples{1000};
    std::string out_path;

    // oracle
    std::string mode{"both"};
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::optional<int> points;
    std::optional<std::string> grid_kind;
    bool no_richardson{false};
    std::string sweep_inv_b;

    // degeneracy
    int dmin{2};
    int dmax{10};

    // table
    bool oracle_confirm{false};
};

PotentialParams resolve_params(PhysicsFlags const& f, std::optional<double> inv_b_override = {})
{
    if (f.b && f.inv_b) {
        throw usage_error("give either --b or --inv-b, not both");
    }
    if (f.A && f.A_over_b) {
        throw usage_error("give either --A or --A-over-b, not both");
    }
    PotentialParams p;
    p.alpha = f.alpha;
    p.mu = f.mu;
    p.hbar = f.hbar;
    if (inv_b_override) {
        p.b = 1.0 / *inv_b_override;
    }
    else if (f.inv_b) {
        p.b = 1.0 / *f.inv_b;
    }
    else {
        p.b = f.b.value_or(1.0);
    }
    p.A = f.A ? *f.A : f.A_over_b.value_or(2.0) * p.b;
    p.validate();
    return p;
}

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> items;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ',')) {
        auto const first = cur.find_first_not_of(" \t");
        auto const last = cur.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw usage_error("empty item in list '" + text + "'");
        }
        items.push_back(cur.substr(first, last - first + 1));
    }
    return items;
}

int parse_int(std::string const& s, std::string const& what)
{
    int v = 0;
    auto const [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw usage_error("invalid integer '" + s + "' in " + what);
    }
    return v;
}

double parse_double(std::string const& s, std::string const& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    }
    catch (std::exception const&) {
        used = 0;
    }
    if (used != s.size() || used == 0) {
        throw usage_error("invalid number '" + s + "' in " + what);
    }
    return v;
}

/// "3" or "0..4" (inclusive).
std::vector<int> parse_range(std::string const& text, std::string const& what)
{
    auto const dots = text.find("..");
    int lo = 0;
    int hi = 0;
    if (dots == std::string::npos) {
        lo = hi = parse_int(text, what);
    }
    else {
        lo = parse_int(text.substr(0, dots), what);
        hi = parse_int(text.substr(dots + 2), what);
    }
    if (lo < 0 || hi < lo || hi - lo > 100000) {
        throw usage_error("invalid range '" + text + "' for " + what);
    }
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) {
        v.push_back(i);
    }
    return v;
}

/// States named by --states, or the --n x --l product. Without --n every bound
/// n is listed for each l.
std::vector<QuantumState> select_states(PhysicsFlags const& f, PotentialParams const& p)
{
    std::vector<QuantumState> states;
    if (!f.states.empty()) {
        if (!f.n_range.empty() || !f.l_range.empty()) {
            throw usage_error("--states cannot be combined with --n/--l");
        }
        for (auto const& label : split_list(f.states)) {
            states.push_back(parse_spectroscopic(label, f.dim));
        }
        return states;
    }
    auto const ls = parse_range(f.l_range.empty() ? "0" : f.l_range, "--l");
    for (int l : ls) {
        if (f.n_range.empty()) {
            for (auto const& e : bound_states(p, l, f.dim)) {
                states.push_back(e.state);
            }
        }
        else {
            for (int n : parse_range(f.n_range, "--n")) {
                QuantumState s{n, l, f.dim};
                s.validate();
                states.push_back(s);
            }
        }
    }
    return states;
}

QuantumState single_state(PhysicsFlags const& f, PotentialParams const& p)
{
    PhysicsFlags g = f;
    if (g.states.empty() && g.n_range.empty()) {
        g.n_range = "0";
    }
    auto const states = select_states(g, p);
    if (states.size() != 1) {
        throw usage_error("this command takes exactly one state");
    }
    states.front().validate();
    return states.front();
}

json params_json(PotentialParams const& p)
{
    return json{{"A", p.A}, {"alpha", p.alpha}, {"b", p.b}, {"hbar", p.hbar}, {"mu", p.mu}};
}

json state_json(QuantumState const& s)
{
    return json{{"label", spectroscopic_label(s)}, {"n", s.n}, {"l", s.l}, {"D", s.D}};
}

/// Runs tasks on up to `jobs` threads; results come back in task order.
template <class T>
std::vector<T> fan_out(std::vector<std::function<T()>> const& tasks, int jobs)
{
    std::vector<T> results;
    results.reserve(tasks.size());
    if (jobs <= 1) {
        for (auto const& t : tasks) {
            results.push_back(t());
        }
        return results;
    }
    for (std::size_t start = 0; start < tasks.size(); start += jobs) {
        std::vector<std::future<T>> batch;
        for (std::size_t i = start; i < std::min(tasks.size(), start + jobs); ++i) {
            batch.push_back(std::async(std::launch::async, tasks[i]));
        }
        for (auto& fut : batch) {
            results.push_back(fut.get());
        }
    }
    return results;
}

// ------------------------------------------------------------------ commands

int cmd_spectrum(Options const& o, std::ostream& out)
{
    auto const p = resolve_params(o.phys);
    auto const states = select_states(o.phys, p);
    int const prec = o.run.precision;

    json rows = json::array();
    Sheet sheet{{"label", "n", "l", "D", "energy", "epsilon", "eta", "status"}, {}};
    for (auto const& s : states) {
        auto const res = solve_level(p, s);
        if (auto const* e = std::get_if<SpectrumEntry>(&res)) {
            auto row = state_json(s);
            row["energy"] = e->energy;
            row["epsilon"] = e->epsilon;
            row["eta"] = e->eta;
            row["status"] = "bound";
            rows.push_back(row);
            if (o.run.format == OutputFormat::Text) {
                sheet.rows.push_back({spectroscopic_label(s), std::to_string(s.n),
                                      std::to_string(s.l), std::to_string(s.D),
                                      fixed(e->energy, prec), fixed(e->epsilon, prec),
                                      fixed(e->eta, prec), "bound"});
            }
            else {
                sheet.rows.push_back({spectroscopic_label(s), std::to_string(s.n),
                                      std::to_string(s.l), std::to_string(s.D), full(e->energy),
                                      full(e->epsilon), full(e->eta), "bound"});
            }
        }
        else {
            auto const& u = std::get<Unbound>(res);
            double const eta = evaluate_level(p, s).eta;
            auto row = state_json(s);
            row["energy"] = nullptr;
            row["epsilon"] = u.epsilon;
            row["eta"] = eta;
            row["status"] = "unbound";
            rows.push_back(row);
            bool const text = o.run.format == OutputFormat::Text;
            sheet.rows.push_back({spectroscopic_label(s), std::to_string(s.n),
                                  std::to_string(s.l), std::to_string(s.D), "",
                                  text ? fixed(u.epsilon, prec) : full(u.epsilon),
                                  text ? fixed(eta, prec) : full(eta), "unbound"});
        }
    }

    if (o.run.format == OutputFormat::Json) {
        json doc{{"parameters", params_json(p)}, {"states", rows}};
        if (states.empty()) {
            doc["note"] = "no bound states";
        }
        write_json(out, doc);
        return exit_ok;
    }
    sheet.write(out, o.run.format);
    if (states.empty()) {
        out << "# no bound states\n";
    }
    return exit_ok;
}

int cmd_table(Options const& o, std::ostream& out)
{
    auto const cells = reproduce_table();
    int const prec = o.run.precision;

    std::vector<std::optional<double>> oracle(cells.size());
    if (o.oracle_confirm) {
        std::vector<std::size_t> flagged;
        std::vector<std::function<double()>> tasks;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (!cells[i].suspected_erratum) {
                continue;
            }
            auto const& c = cells[i];
            double const alpha = c.alpha_label == "0,1" ? 0.0 : std::stod(c.alpha_label);
            auto const p = PotentialParams::from_inverse_range(c.inv_b, 2.0, alpha);
            auto const s = parse_spectroscopic(c.state, c.D);
            flagged.push_back(i);
            tasks.emplace_back(
                [p, s] { return oracle_energy(p, s, CentrifugalMode::Approximated); });
        }
        auto const values = fan_out(tasks, o.run.jobs);
        for (std::size_t k = 0; k < flagged.size(); ++k) {
            oracle[flagged[k]] = values[k];
        }
    }

    std::vector<TableCell const*> errata;
    for (auto const& c : cells) {
        if (c.suspected_erratum) {
            errata.push_back(&c);
        }
    }

    if (o.run.format == OutputFormat::Json) {
        json doc;
        json tree = json::object();
        json flagged = json::array();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto const& c = cells[i];
            json cell{{"published", c.published},
                      {"computed", c.computed},
                      {"diff", c.diff},
                      {"suspected_erratum", c.suspected_erratum}};
            if (oracle[i]) {
                cell["oracle"] = *oracle[i];
            }
            tree[c.state][key3(c.inv_b)][c.alpha_label][std::to_string(c.D)] = cell;
            if (c.suspected_erratum) {
                flagged.push_back(json{{"state", c.state},
                                       {"inv_b", key3(c.inv_b)},
                                       {"alpha", c.alpha_label},
                                       {"D", c.D}});
            }
        }
        doc["cells"] = tree;
        doc["suspected_errata"] = flagged;
        doc["tolerance"] = table_tolerance;
        write_json(out, doc);
        return exit_ok;
    }

    Sheet sheet{{"state", "inv_b", "D", "alpha", "published", "computed", "diff", "flag"}, {}};
    if (o.oracle_confirm) {
        sheet.header.push_back("oracle");
    }
    bool const text = o.run.format == OutputFormat::Text;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        auto const& c = cells[i];
        std::vector<std::string> row{c.state,
                                     key3(c.inv_b),
                                     std::to_string(c.D),
                                     c.alpha_label,
                                     text ? fixed(c.published, prec) : full(c.published),
                                     text ? fixed(c.computed, prec) : full(c.computed),
                                     text ? sci(c.diff) : full(c.diff),
                                     c.suspected_erratum ? "erratum?" : "ok"};
        if (o.oracle_confirm) {
            row.push_back(oracle[i] ? (text ? fixed(*oracle[i], prec) : full(*oracle[i])) : "");
        }
        if (!text && c.alpha_label == "0,1") {
            row[3] = "\"0,1\"";
        }
        sheet.rows.push_back(std::move(row));
    }
    sheet.write(out, o.run.format);
    if (text) {
        out << "\n" << cells.size() << " cells, " << errata.size()
            << " suspected errata (|computed - published| > " << table_tolerance << ")\n";
        for (auto const* c : errata) {
            out << "  " << c->state << "  1/b=" << key3(c->inv_b) << "  D=" << c->D
                << "  alpha=" << c->alpha_label << "  published " << fixed(c->published, prec)
                << "  recomputed " << fixed(c->computed, prec) << '\n';
        }
    }
    return exit_ok;
}

int cmd_wavefunction(Options const& o, std::ostream& out)
{
    if (o.samples < 2) {
        throw usage_error("--samples must be at least 2");
    }
    auto const p = resolve_params(o.phys);
    auto const s = single_state(o.phys, p);
    auto const sol = radial_wavefunction(p, s);
    auto const samples = sample_wavefunction(sol, o.samples);
    double const norm = radial_norm_integral(sol);

    std::ofstream file;
    std::ostream* dest = &out;
    if (!o.out_path.empty()) {
        file.open(o.out_path, std::ios::binary);
        if (!file) {
            throw usage_error("cannot open output file '" + o.out_path + "'");
        }
        dest = &file;
    }

    if (o.run.format == OutputFormat::Json) {
        json pts = json::array();
        for (auto const& w : samples) {
            pts.push_back(json{{"r", w.r}, {"z", w.z}, {"g", w.g}, {"g2", w.g2}});
        }
        json doc{{"state", state_json(s)},
                 {"parameters", params_json(p)},
                 {"energy", sol.entry().energy},
                 {"norm", norm},
                 {"norm_constant", sol.norm_constant()},
                 {"node_count", sol.node_count()},
                 {"samples", pts}};
        write_json(*dest, doc);
    }
    else {
        *dest << "r,z,g,g2\n";
        for (auto const& w : samples) {
            *dest << full(w.r) << ',' << full(w.z) << ',' << full(w.g) << ',' << full(w.g2) << '\n';
        }
        *dest << "# state=" << spectroscopic_label(s) << " n=" << s.n << " l=" << s.l
              << " D=" << s.D << '\n';
        *dest << "# energy=" << full(sol.entry().energy) << '\n';
        *dest << "# norm_constant=" << full(sol.norm_constant()) << '\n';
        *dest << "# norm=" << full(norm) << '\n';
        *dest << "# node_count=" << sol.node_count() << '\n';
    }
    if (!*dest) {
        throw std::runtime_error("write failed");
    }
    return exit_ok;
}

std::optional<RadialGrid> grid_override(Options const& o, PotentialParams const& p,
                                        QuantumState const& s)
{
    if (!o.r_min && !o.r_max && !o.points && !o.grid_kind) {
        return std::nullopt;
    }
    RadialGrid g = default_grid(p, s);
    if (o.r_min) {
        g.r_min = *o.r_min;
    }
    if (o.r_max) {
        g.r_max = *o.r_max;
    }
    if (o.points) {
        g.n_points = *o.points;
    }
    if (o.grid_kind) {
        g.kind = *o.grid_kind == "uniform" ? GridKind::Uniform : GridKind::Logarithmic;
    }
    g.validate();
    return g;
}

struct OracleRow
{
    QuantumState state;
    PotentialParams params;
    double e_closed;
    std::optional<double> e_exact;
    std::optional<double> e_approx;
};

int cmd_oracle(Options const& o, std::ostream& out)
{
    std::vector<std::optional<double>> inv_bs{std::nullopt};
    if (!o.sweep_inv_b.empty()) {
        inv_bs.clear();
        for (auto const& item : split_list(o.sweep_inv_b)) {
            double const v = parse_double(item, "--sweep-inv-b");
            if (!(v > 0.0)) {
                throw usage_error("--sweep-inv-b values must be positive");
            }
            inv_bs.emplace_back(v);
        }
    }
    bool const want_exact = o.mode != "approx";
    bool const want_approx = o.mode != "exact";
    SolveOptions const solve{!o.no_richardson, 1e-12};

    std::vector<std::function<OracleRow()>> tasks;
    for (auto const& ib : inv_bs) {
        auto const p = resolve_params(o.phys, ib);
        for (auto const& s : select_states(o.phys, p)) {
            auto const entry = energy(p, s);
            auto const grid = grid_override(o, p, s);
            tasks.emplace_back([=] {
                OracleRow row{s, p, entry.energy, std::nullopt, std::nullopt};
                auto run_mode = [&](CentrifugalMode mode) {
                    RadialGrid const g = grid ? *grid : default_grid(p.b, entry.epsilon, entry.a_param);
                    auto const res = solve_radial(p, s.D, s.l, mode, g, s.n + 1, solve);
                    if (res.truncated) {
                        std::ostringstream msg;
                        msg << "oracle found no eigenvalue with index " << s.n << " for "
                            << spectroscopic_label(s) << " D=" << s.D << " ("
                            << to_string(mode) << "); grid " << to_string(g.kind)
                            << " r_min=" << g.r_min << " r_max=" << g.r_max
                            << " points=" << g.n_points;
                        throw solver_error(msg.str());
                    }
                    return res.richardson_estimate ? (*res.richardson_estimate)[s.n]
                                                   : res.eigenvalues[s.n];
                };
                if (want_exact) {
                    row.e_exact = run_mode(CentrifugalMode::Exact);
                }
                if (want_approx) {
                    row.e_approx = run_mode(CentrifugalMode::Approximated);
                }
                return row;
            });
        }
    }
    auto const rows = fan_out(tasks, o.run.jobs);

    auto rel = [](double closed, double ref) { return std::abs(closed - ref) / std::abs(ref); };
    int const prec = o.run.precision;

    if (o.run.format == OutputFormat::Json) {
        json list = json::array();
        for (auto const& r : rows) {
            json j = state_json(r.state);
            j["inv_b"] = 1.0 / r.params.b;
            j["A"] = r.params.A;
            j["alpha"] = r.params.alpha;
            j["e_closed"] = r.e_closed;
            if (r.e_exact) {
                j["e_exact"] = *r.e_exact;
                j["rel_error_exact"] = rel(r.e_closed, *r.e_exact);
            }
            if (r.e_approx) {
                j["e_approx"] = *r.e_approx;
                j["rel_error_approx"] = rel(r.e_closed, *r.e_approx);
            }
            list.push_back(j);
        }
        write_json(out, json{{"mode", o.mode}, {"richardson", !o.no_richardson}, {"rows", list}});
        return exit_ok;
    }

    bool const text = o.run.format == OutputFormat::Text;
    Sheet sheet{{"label", "n", "l", "D", "inv_b", "e_closed"}, {}};
    if (want_exact) {
        sheet.header.insert(sheet.header.end(), {"e_exact", "rel_err_exact"});
    }
    if (want_approx) {
        sheet.header.insert(sheet.header.end(), {"e_approx", "rel_err_approx"});
    }
    for (auto const& r : rows) {
        auto num = [&](double v) { return text ? fixed(v, prec) : full(v); };
        auto err = [&](double v) { return text ? sci(v) : full(v); };
        std::vector<std::string> cells{spectroscopic_label(r.state), std::to_string(r.state.n),
                                       std::to_string(r.state.l), std::to_string(r.state.D),
                                       text ? fixed(1.0 / r.params.b, 3) : full(1.0 / r.params.b),
                                       num(r.e_closed)};
        if (r.e_exact) {
            cells.push_back(num(*r.e_exact));
            cells.push_back(err(rel(r.e_closed, *r.e_exact)));
        }
        if (r.e_approx) {
            cells.push_back(num(*r.e_approx));
            cells.push_back(err(rel(r.e_closed, *r.e_approx)));
        }
        sheet.rows.push_back(std::move(cells));
    }
    sheet.write(out, o.run.format);
    return exit_ok;
}

int cmd_degeneracy(Options const& o, std::ostream& out)
{
    if (o.dmin < 2 || o.dmax < o.dmin) {
        throw usage_error("invalid dimension range [" + std::to_string(o.dmin) + ", " +
                          std::to_string(o.dmax) + "]");
    }
    auto const p = resolve_params(o.phys);
    auto const s = single_state(o.phys, p);
    auto const partners = degenerate_partners(s, o.dmin, o.dmax);
    int const prec = o.run.precision;

    std::vector<std::optional<double>> energies;
    for (auto const& t : partners) {
        auto const res = solve_level(p, t);
        if (auto const* e = std::get_if<SpectrumEntry>(&res)) {
            energies.emplace_back(e->energy);
        }
        else {
            energies.emplace_back(std::nullopt);
        }
    }
    double spread = 0.0;
    for (auto const& a : energies) {
        for (auto const& b : energies) {
            if (a && b) {
                spread = std::max(spread, std::abs(*a - *b));
            }
        }
    }

    if (o.run.format == OutputFormat::Json) {
        json list = json::array();
        for (std::size_t i = 0; i < partners.size(); ++i) {
            json j = state_json(partners[i]);
            j["energy"] = energies[i] ? json(*energies[i]) : json(nullptr);
            list.push_back(j);
        }
        write_json(out, json{{"partners", list}, {"spread", spread}, {"q", s.q()}});
        return exit_ok;
    }
    bool const text = o.run.format == OutputFormat::Text;
    Sheet sheet{{"label", "n", "l", "D", "energy"}, {}};
    for (std::size_t i = 0; i < partners.size(); ++i) {
        auto const& t = partners[i];
        sheet.rows.push_back(
            {spectroscopic_label(t), std::to_string(t.n), std::to_string(t.l),
             std::to_string(t.D),
             energies[i] ? (text ? fixed(*energies[i], prec) : full(*energies[i])) : "unbound"});
    }
    sheet.write(out, o.run.format);
    if (text) {
        out << "# " << partners.size() << " partner(s) with D + 2l = " << s.D + 2 * s.l
            << ", energy spread " << sci(spread) << '\n';
    }
    return exit_ok;
}

int cmd_critical(Options const& o, std::ostream& out)
{
    auto const p = resolve_params(o.phys);
    PhysicsFlags f = o.phys;
    if (f.states.empty() && f.n_range.empty()) {
        f.n_range = "0";
    }
    auto const states = select_states(f, p);
    int const prec = o.run.precision;
    if (o.run.format == OutputFormat::Json) {
        json list = json::array();
        for (auto const& s : states) {
            json j = state_json(s);
            j["alpha"] = p.alpha;
            j["A_c"] = critical_coupling(s, p.alpha);
            list.push_back(j);
        }
        write_json(out, json{{"states", list}});
        return exit_ok;
    }
    bool const text = o.run.format == OutputFormat::Text;
    Sheet sheet{{"label", "n", "l", "D", "alpha", "A_c"}, {}};
    for (auto const& s : states) {
        double const ac = critical_coupling(s, p.alpha);
        sheet.rows.push_back({spectroscopic_label(s), std::to_string(s.n), std::to_string(s.l),
                              std::to_string(s.D), text ? fixed(p.alpha, 4) : full(p.alpha),
                              text ? fixed(ac, prec) : full(ac)});
    }
    sheet.write(out, o.run.format);
    return exit_ok;
}

void add_physics(CLI::App& app, Options& o)
{
    auto& f = o.phys;
    app.add_option("--A", f.A, "coupling A (default 2b)");
    app.add_option("--A-over-b", f.A_over_b, "coupling given as the ratio A/b");
    app.add_option("--b", f.b, "screening length b (default 1)");
    app.add_option("--inv-b", f.inv_b, "screening parameter 1/b");
    app.add_option("--alpha", f.alpha, "shape parameter alpha")->capture_default_str();
    app.add_option("--mu", f.mu, "reduced mass")->capture_default_str();
    app.add_option("--hbar", f.hbar, "reduced Planck constant")->capture_default_str();
    app.add_option("--dim", f.dim, "spatial dimension D")->capture_default_str();
    app.add_option("--states", f.states, "comma-separated labels, e.g. 2p,3d");
    app.add_option("--n", f.n_range, "radial quantum number or range a..b");
    app.add_option("--l", f.l_range, "orbital quantum number or range a..b");
}

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Bound states of the D-dimensional Manning-Rosen potential", "mrspec"};
    app.set_config("--config", "", "key=value file; flags on the command line win");
    app.require_subcommand(1);
    add_physics(app, o);
    app.add_option("--format", o.format, "text | csv | json")
        ->check(CLI::IsMember({"text", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--precision", o.run.precision, "decimals for energies in text output")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    app.add_option("--jobs", o.run.jobs, "worker threads for oracle runs")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* spectrum = app.add_subcommand("spectrum", "closed-form energies");
    auto* table = app.add_subcommand("table", "reproduce and audit the reference table");
    table->add_flag("--oracle-confirm", o.oracle_confirm,
                    "re-solve flagged cells with the finite-difference oracle");
    auto* wave = app.add_subcommand("wavefunction", "sample a normalized radial wavefunction");
    wave->add_option("--samples", o.samples, "number of sample radii")->capture_default_str();
    wave->add_option("--out", o.out_path, "output file (default stdout)");
    auto* oracle = app.add_subcommand("oracle", "compare with the finite-difference eigensolver");
    oracle->add_option("--mode", o.mode, "exact | approx | both")
        ->check(CLI::IsMember({"exact", "approx", "both"}))
        ->capture_default_str();
    oracle->add_option("--r-min", o.r_min, "grid start radius");
    oracle->add_option("--r-max", o.r_max, "grid end radius");
    oracle->add_option("--points", o.points, "grid points including endpoints");
    oracle->add_option("--grid", o.grid_kind, "log | uniform")
        ->check(CLI::IsMember({"log", "uniform"}));
    oracle->add_flag("--no-richardson", o.no_richardson, "report the raw grid eigenvalue");
    oracle->add_option("--sweep-inv-b", o.sweep_inv_b, "comma-separated 1/b values");
    auto* degeneracy = app.add_subcommand("degeneracy", "interdimensional partners of a state");
    degeneracy->add_option("--dmin", o.dmin, "smallest dimension")->capture_default_str();
    degeneracy->add_option("--dmax", o.dmax, "largest dimension")->capture_default_str();
    auto* critical = app.add_subcommand("critical-coupling", "coupling at which a state unbinds");
    for (auto* sub : {spectrum, table, wave, oracle, degeneracy, critical}) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&) {
        out << app.help();
        return exit_ok;
    }
    catch (CLI::ParseError const& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    o.run.format = o.format == "json" ? OutputFormat::Json
                   : o.format == "csv" ? OutputFormat::Csv
                                       : OutputFormat::Text;
    try {
        o.run.validate();
        if (spectrum->parsed()) {
            return cmd_spectrum(o, out);
        }
        if (table->parsed()) {
            return cmd_table(o, out);
        }
        if (wave->parsed()) {
            return cmd_wavefunction(o, out);
        }
        if (oracle->parsed()) {
            return cmd_oracle(o, out);
        }
        if (degeneracy->parsed()) {
            return cmd_degeneracy(o, out);
        }
        return cmd_critical(o, out);
    }
    catch (unbound_error const& e) {
        err << "error: " << e.what() << '\n';
        return exit_unbound;
    }
    catch (solver_error const& e) {
        err << "solver failure: " << e.what() << '\n';
        return exit_solver;
    }
    catch (quadrature_error const& e) {
        err << "solver failure: " << e.what() << " (last " << e.last() << ", previous "
            << e.previous() << ")\n";
        return exit_solver;
    }
    catch (std::invalid_argument const& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (std::domain_error const& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
}

} // namespace mrspec::cli
