// hnstrat: command-line front end over the header-only library. Subcommands
// cover enumeration of B(G,mu) with per-class reports, single-class queries
// (theta, dims, hnd, dor, report), the fully-HND scan, HN polygons of
// modifications, and the weak-admissibility containment pruner.
//
// Sign conventions (also in --help): deg(x) = -sum(mu) for the lattice shift,
// so a modified bundle has degree deg(b) + sum(mu). Rationals print as "p/q"
// in lowest terms; vectors are comma-separated.
//
// Exit codes: 0 ok, 2 usage or parse error, 3 domain error, 4 oracle mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <hnstrat/hnengine.hpp>
#include <hnstrat/kottwitz.hpp>
#include <hnstrat/oracles.hpp>
#include <hnstrat/rational.hpp>
#include <hnstrat/rootdata.hpp>
#include <hnstrat/strata.hpp>

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace {

using json = nlohmann::ordered_json;
using namespace hnstrat;

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parsing --

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(s);
  while (std::getline(in, piece, sep)) out.push_back(piece);
  if (out.empty() || (!s.empty() && s.back() == sep))
    throw ParseFailure("empty entry in list: '" + s + "'");
  return out;
}

Int parse_int(const std::string& s) {
  if (s.empty()) throw ParseFailure("empty integer");
  std::size_t used = 0;
  Int value = 0;
  try {
    value = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw ParseFailure("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw ParseFailure("not an integer: '" + s + "'");
  return value;
}

std::vector<Int> parse_int_list(const std::string& s) {
  std::vector<Int> out;
  for (const auto& piece : split_list(s, ',')) out.push_back(parse_int(piece));
  return out;
}

Rat parse_rat_cli(const std::string& s) {
  try {
    return parse_rat(s);
  } catch (const DomainError& e) {
    throw ParseFailure(e.what());
  }
}

RatVec parse_rat_list(const std::string& s) {
  RatVec out;
  for (const auto& piece : split_list(s, ',')) out.push_back(parse_rat_cli(piece));
  return out;
}

GroupDatum parse_group(const std::string& groupSpec, Int twist) {
  if (groupSpec.rfind("gl:", 0) != 0)
    throw ParseFailure("--group must look like gl:N, got '" + groupSpec + "'");
  const Int n = parse_int(groupSpec.substr(3));
  if (n < 1) throw ParseFailure("--group rank must be positive");
  return GroupDatum{n, twist};
}

// "d/h" entries, h defaulting to 1.
IsocrystalBlocks parse_b(const std::string& s) {
  IsocrystalBlocks b;
  for (const auto& piece : split_list(s, ',')) {
    const auto slash = piece.find('/');
    IsocrystalBlocks::Block blk;
    if (slash == std::string::npos) {
      blk.d = parse_int(piece);
      blk.h = 1;
    } else {
      blk.d = parse_int(piece.substr(0, slash));
      blk.h = parse_int(piece.substr(slash + 1));
    }
    b.blocks.push_back(blk);
  }
  return b;
}

// "d/h:a" entries, h defaulting to 1 and a to 0.
ModificationInstance parse_blocks(const std::string& s) {
  ModificationInstance inst;
  for (const auto& piece : split_list(s, ',')) {
    std::string head = piece;
    Int a = 0;
    const auto colon = piece.find(':');
    if (colon != std::string::npos) {
      head = piece.substr(0, colon);
      a = parse_int(piece.substr(colon + 1));
    }
    ModificationInstance::Block blk;
    const auto slash = head.find('/');
    if (slash == std::string::npos) {
      blk.d = parse_int(head);
      blk.h = 1;
    } else {
      blk.d = parse_int(head.substr(0, slash));
      blk.h = parse_int(head.substr(slash + 1));
    }
    blk.a = a;
    inst.blocks.push_back(blk);
  }
  return inst;
}

// -------------------------------------------------------------- rendering --

std::string fmt_int_vec(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string fmt_levi(const Composition& levi) { return fmt_int_vec(levi.parts); }

std::string fmt_hnd_levi(const Composition& levi) {
  return levi.is_proper() ? fmt_levi(levi) : std::string("indecomposable");
}

// Per-block multisets of -lambda, each sorted descending, e.g.
// "1 | 1,1,1,0,0 | 0".
std::string fmt_blockwise(const std::vector<Int>& v, const Composition& levi) {
  std::string out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < levi.parts.size(); ++i) {
    if (i) out += " | ";
    std::vector<Int> block(v.begin() + static_cast<std::ptrdiff_t>(pos),
                           v.begin() + static_cast<std::ptrdiff_t>(pos + levi.parts[i]));
    std::sort(block.begin(), block.end(), std::greater<Int>());
    for (std::size_t k = 0; k < block.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(block[k]);
    }
    pos += static_cast<std::size_t>(levi.parts[i]);
  }
  return out;
}

json type_json(const HNType& type) {
  const Cocharacter minusLam = type.minus_lambda();
  json j;
  j["levi"] = fmt_levi(type.levi);
  j["lambda"] = fmt_int_vec(type.lam.entries);
  j["minus_lambda"] = fmt_int_vec(minusLam.entries);
  j["minus_lambda_blocks"] = fmt_blockwise(minusLam.entries, type.levi);
  j["block_sums"] = fmt_int_vec(sharp_M(minusLam, type.levi));
  return j;
}

json group_json(const GroupDatum& G) {
  json j;
  j["n"] = G.n;
  j["twist"] = G.twist_degree;
  return j;
}

json row_json(const StratumReport& r, bool strict) {
  json j;
  j["nu"] = format_ratvec(r.nu.slopes);
  j["basic"] = r.nu.is_basic();
  j["in_B_HN"] = r.in_B_HN;
  j["theta_count"] = r.theta.size();
  j["hnd_levi"] = fmt_hnd_levi(r.hnd_levi);
  j["dim_newton"] = format_rat(r.dim_newton_value);
  j["dim_hn_bound"] = r.dim_hn_bound_value ? json(format_rat(*r.dim_hn_bound_value)) : json(nullptr);
  if (strict)
    j["dim_hn_bound_2rho"] =
        r.dim_hn_bound_2rho ? json(format_rat(*r.dim_hn_bound_2rho)) : json(nullptr);
  j["dims_equal"] = r.dims_equal ? json(*r.dims_equal) : json(nullptr);
  j["dor"] = r.dor;
  return j;
}

std::string csv_field(const json& v) {
  std::string raw;
  if (v.is_null())
    raw = "";
  else if (v.is_boolean())
    raw = v.get<bool>() ? "true" : "false";
  else if (v.is_string())
    raw = v.get<std::string>();
  else
    raw = v.dump();
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_table_csv(const std::vector<std::string>& columns, const json& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(json(columns[i]));
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      out += csv_field(row.contains(columns[i]) ? row.at(columns[i]) : json(nullptr));
    }
    out += '\n';
  }
  return out;
}

std::string md_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render_table_markdown(const std::vector<std::string>& columns, const json& rows) {
  std::string out = "|";
  for (const auto& c : columns) out += " " + c + " |";
  out += "\n|";
  for (std::size_t i = 0; i < columns.size(); ++i) out += " --- |";
  out += "\n";
  for (const auto& row : rows) {
    out += "|";
    for (const auto& c : columns)
      out += " " + md_field(row.contains(c) ? row.at(c) : json(nullptr)) + " |";
    out += "\n";
  }
  return out;
}

void print_json(const json& doc) { std::cout << doc.dump(2) << "\n"; }

// ------------------------------------------------------------ parallelism --

template <typename F>
void run_parallel(std::size_t count, unsigned jobs, F&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += workers) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

// -------------------------------------------------------------- subcommands --

struct Request {
  std::string group = "gl:1";
  Int twist = 0;
  std::string mu;
  std::string nu;
  std::string b;
  std::string blocks;
  std::string levi;
  std::string format = "json";
  bool bound2rho = false;
  bool oracle = false;
  unsigned jobs = 1;
};

void check_theta_oracle(const GroupDatum& G, const Cocharacter& mu, const NewtonPoint& nu,
                        const std::vector<HNType>& got) {
  const auto expect = oracles::theta_set(G, mu, nu);
  if (expect != got)
    throw OracleMismatch("theta_set disagrees with the grid oracle for nu = " +
                         format_ratvec(nu.slopes));
}

void check_hnd_oracle(const Cocharacter& mu, const NewtonPoint& nu, const Composition& got) {
  if (!(oracles::smallest_hnd_levi(mu, nu) == got))
    throw OracleMismatch("smallest_hnd_levi disagrees with the composition scan for nu = " +
                         format_ratvec(nu.slopes));
}

void check_dims_oracle(const GroupDatum& G, const Cocharacter& mu, const NewtonPoint& nu,
                       const Rat& bound) {
  const auto types = oracles::theta_set(G, mu, nu);
  if (types.empty()) throw OracleMismatch("oracle Theta empty but dim_hn_bound produced a value");
  const RatVec muDom = mu.sorted_desc().rational();
  std::optional<Rat> best;
  for (const auto& t : types) {
    RatVec v = muDom;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rat(t.lam.entries[i]);
    const Rat val = rho_pairing(v, 1);
    if (!best || val > *best) best = val;
  }
  if (*best != bound) throw OracleMismatch("dim_hn_bound disagrees with the grid-oracle maximum");
}

int cmd_enumerate(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const auto B = enumerate_B(G, mu);
  if (req.oracle) {
    const auto expect = oracles::enumerate_B(G, mu);
    if (!(expect == B)) throw OracleMismatch("enumerate_B disagrees with the grid oracle");
  }

  std::vector<StratumReport> reports(B.size());
  run_parallel(B.size(), req.jobs,
               [&](std::size_t i) { reports[i] = stratum_report(G, mu, B[i], req.bound2rho); });
  if (req.oracle) {
    for (const auto& r : reports) {
      check_theta_oracle(G, mu, r.nu, r.theta);
      check_hnd_oracle(mu, r.nu, r.hnd_levi);
      if (r.dim_hn_bound_value) check_dims_oracle(G, mu, r.nu, *r.dim_hn_bound_value);
    }
  }

  json rows = json::array();
  for (const auto& r : reports) rows.push_back(row_json(r, req.bound2rho));

  if (req.format == "json") {
    json doc;
    doc["command"] = "enumerate";
    doc["group"] = group_json(G);
    doc["mu_raw"] = req.mu;
    doc["mu_dom"] = fmt_int_vec(mu.sorted_desc().entries);
    doc["rows"] = rows;
    print_json(doc);
    return 0;
  }
  std::vector<std::string> columns{"nu",         "basic",        "in_B_HN",
                                   "theta_count", "hnd_levi",     "dim_newton",
                                   "dim_hn_bound", "dims_equal",  "dor"};
  if (req.bound2rho)
    columns.insert(columns.begin() + 7, "dim_hn_bound_2rho");
  if (req.format == "csv")
    std::cout << render_table_csv(columns, rows);
  else if (req.format == "markdown")
    std::cout << render_table_markdown(columns, rows);
  else
    throw ParseFailure("unknown --format '" + req.format + "'");
  return 0;
}

json single_header(const char* command, const GroupDatum& G, const Request& req,
                   const Cocharacter& mu) {
  json doc;
  doc["command"] = command;
  doc["group"] = group_json(G);
  doc["mu_raw"] = req.mu;
  doc["mu_dom"] = fmt_int_vec(mu.sorted_desc().entries);
  doc["nu"] = req.nu.empty() ? json(nullptr) : json(format_ratvec(parse_rat_list(req.nu)));
  return doc;
}

int cmd_theta(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nu{parse_rat_list(req.nu)};
  const auto types = theta_set(G, mu, nu);
  if (req.oracle) check_theta_oracle(G, mu, nu, types);
  json doc = single_header("theta", G, req, mu);
  doc["count"] = types.size();
  json arr = json::array();
  for (const auto& t : types) arr.push_back(type_json(t));
  doc["types"] = arr;
  print_json(doc);
  return 0;
}

int cmd_dims(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nu{parse_rat_list(req.nu)};
  const Rat newton = dim_newton(mu, nu);
  const Rat bound = dim_hn_bound(G, mu, nu, 1);
  const bool equal = dims_equal_classification(mu, nu);
  if (req.oracle) {
    check_dims_oracle(G, mu, nu, bound);
    check_hnd_oracle(mu, nu, smallest_hnd_levi(mu, nu));
  }
  json doc = single_header("dims", G, req, mu);
  doc["dim_newton"] = format_rat(newton);
  doc["dim_hn_bound"] = format_rat(bound);
  if (req.bound2rho) doc["dim_hn_bound_2rho"] = format_rat(dim_hn_bound(G, mu, nu, 2));
  doc["dims_equal"] = equal;
  print_json(doc);
  return 0;
}

int cmd_hnd(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nu{parse_rat_list(req.nu)};
  require_in_B(G, mu, nu);
  const Composition levi = smallest_hnd_levi(mu, nu);
  if (req.oracle) check_hnd_oracle(mu, nu, levi);
  json doc = single_header("hnd", G, req, mu);
  doc["hnd_levi"] = fmt_hnd_levi(levi);
  doc["hn_indecomposable"] = !levi.is_proper();
  if (!req.levi.empty()) {
    const Composition query{parse_int_list(req.levi)};
    doc["levi"] = fmt_levi(query);
    doc["decomposable_along_levi"] = hn_decomposable(mu, nu, query);
  }
  print_json(doc);
  return 0;
}

int cmd_dor(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nu{parse_rat_list(req.nu)};
  const auto [nonempty, witness] = dor_nonempty(G, mu, nu);
  if (req.oracle) {
    const auto expect = oracles::dor_witnesses(G, mu, nu);
    if (expect.empty() == nonempty)
      throw OracleMismatch("dor_nonempty disagrees with the grid oracle");
    if (nonempty &&
        std::find(expect.begin(), expect.end(), *witness) == expect.end())
      throw OracleMismatch("dor witness not found by the grid oracle");
  }
  json doc = single_header("dor", G, req, mu);
  doc["dor_nonempty"] = nonempty;
  doc["witness"] = witness ? type_json(*witness) : json(nullptr);
  print_json(doc);
  return 0;
}

int cmd_report(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nu{parse_rat_list(req.nu)};
  const StratumReport r = stratum_report(G, mu, nu, req.bound2rho);
  if (req.oracle) {
    check_theta_oracle(G, mu, nu, r.theta);
    check_hnd_oracle(mu, nu, r.hnd_levi);
    if (r.dim_hn_bound_value) check_dims_oracle(G, mu, nu, *r.dim_hn_bound_value);
    const auto expect = oracles::dor_witnesses(G, mu, nu);
    if (expect.empty() == r.dor) throw OracleMismatch("dor flag disagrees with the grid oracle");
  }
  json doc = single_header("report", G, req, mu);
  doc["basic"] = nu.is_basic();
  doc["in_B"] = r.in_B;
  doc["in_B_HN"] = r.in_B_HN;
  doc["theta_count"] = r.theta.size();
  json arr = json::array();
  for (const auto& t : r.theta) arr.push_back(type_json(t));
  doc["theta"] = arr;
  doc["hnd_levi"] = fmt_hnd_levi(r.hnd_levi);
  doc["hn_indecomposable"] = !r.hnd_levi.is_proper();
  doc["dim_newton"] = format_rat(r.dim_newton_value);
  doc["dim_hn_bound"] =
      r.dim_hn_bound_value ? json(format_rat(*r.dim_hn_bound_value)) : json(nullptr);
  if (req.bound2rho)
    doc["dim_hn_bound_2rho"] =
        r.dim_hn_bound_2rho ? json(format_rat(*r.dim_hn_bound_2rho)) : json(nullptr);
  doc["dims_equal"] = r.dims_equal ? json(*r.dims_equal) : json(nullptr);
  doc["dor_nonempty"] = r.dor;
  doc["dor_witness"] = r.dor_witness ? type_json(*r.dor_witness) : json(nullptr);
  print_json(doc);
  return 0;
}

int cmd_fully_hnd(const Request& req) {
  const GroupDatum G = parse_group(req.group, req.twist);
  const Cocharacter mu{parse_int_list(req.mu)};
  const auto [ok, witness] = fully_hnd(G, mu);
  if (req.oracle) {
    bool expectOk = true;
    std::optional<NewtonPoint> expectWitness;
    for (const auto& nu : oracles::enumerate_B(G, mu)) {
      if (nu.is_basic()) continue;
      if (!oracles::smallest_hnd_levi(mu, nu).is_proper()) {
        expectOk = false;
        expectWitness = nu;
        break;
      }
    }
    if (expectOk != ok || (witness && expectWitness && !(*witness == *expectWitness)))
      throw OracleMismatch("fully_hnd disagrees with the composition-scan oracle");
  }
  json doc;
  doc["command"] = "fully-hnd";
  doc["group"] = group_json(G);
  doc["mu_raw"] = req.mu;
  doc["mu_dom"] = fmt_int_vec(mu.sorted_desc().entries);
  doc["fully_hnd"] = ok;
  doc["witness"] = witness ? json(format_ratvec(witness->slopes)) : json(nullptr);
  doc["classes_checked"] = enumerate_B(G, mu).size();
  print_json(doc);
  return 0;
}

std::string fmt_blocks(const ModificationInstance& inst) {
  std::string out;
  for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(inst.blocks[i].d) + "/" + std::to_string(inst.blocks[i].h) + ":" +
           std::to_string(inst.blocks[i].a);
  }
  return out;
}

json polygon_json(const Polygon& p) {
  json arr = json::array();
  for (const auto& [r, d] : p.vertices) arr.push_back(json::array({r, format_rat(d)}));
  return arr;
}

int cmd_hn_polygon(const Request& req) {
  const ModificationInstance inst = parse_blocks(req.blocks);
  const auto [rank, degree] = deg_rank(inst);
  const Polygon poly = modification_hn(inst);
  if (req.oracle && inst.blocks.size() <= 16) {
    const Polygon expect = hn_polygon_lattice(oracles::subset_lattice(inst));
    if (!(expect == poly))
      throw OracleMismatch("modification_hn disagrees with the subset-lattice envelope");
  }
  if (req.format == "csv") {
    std::cout << "rank,degree\n";
    for (const auto& [r, d] : poly.vertices) std::cout << r << "," << format_rat(d) << "\n";
    return 0;
  }
  if (req.format != "json") throw ParseFailure("unknown --format '" + req.format + "'");
  json doc;
  doc["command"] = "hn-polygon";
  doc["blocks"] = fmt_blocks(inst);
  doc["rank"] = rank;
  doc["degree"] = degree;
  doc["vertices"] = polygon_json(poly);
  doc["slopes"] = format_ratvec(poly.unit_slopes());
  if (!req.levi.empty()) {
    const Composition levi{parse_int_list(req.levi)};
    const auto proj = hodge_newton_project(inst, levi);
    doc["levi"] = fmt_levi(levi);
    json blocks = json::array();
    for (const auto& blk : proj.blocks) {
      json b;
      b["blocks"] = fmt_blocks(blk.instance);
      b["vertices"] = polygon_json(blk.polygon);
      b["slopes"] = format_ratvec(blk.polygon.unit_slopes());
      blocks.push_back(b);
    }
    doc["block_polygons"] = blocks;
  }
  print_json(doc);
  return 0;
}

std::string fmt_split(const std::vector<Cocharacter>& split) {
  std::string out;
  for (std::size_t i = 0; i < split.size(); ++i) {
    if (i) out += " | ";
    out += fmt_int_vec(split[i].entries);
  }
  return out;
}

int cmd_wa(const Request& req) {
  const IsocrystalBlocks b = parse_b(req.b);
  const Cocharacter mu{parse_int_list(req.mu)};
  const NewtonPoint nuPrime{parse_rat_list(req.nu)};
  const WaResult result = wa_containment(b, mu, nuPrime);
  if (req.oracle) {
    try {
      oracles::verify_wa(b, mu, nuPrime, result);
    } catch (const DomainError& e) {
      throw OracleMismatch(e.what());
    }
  }
  json doc;
  doc["command"] = "wa";
  doc["b"] = req.b;
  doc["mu_raw"] = req.mu;
  doc["mu_dom"] = fmt_int_vec(mu.sorted_desc().entries);
  doc["nu_prime"] = format_ratvec(nuPrime.slopes);
  doc["verdict"] = result.verdict == WaVerdict::Contained ? "Contained" : "Inconclusive";
  json killed = json::array();
  for (const auto& sc : result.killed) {
    json k;
    k["levi"] = fmt_levi(sc.levi);
    k["mu_split"] = fmt_split(sc.mu_split);
    k["rule"] = sc.killed_by;
    killed.push_back(k);
  }
  doc["killed"] = killed;
  json surviving = json::array();
  for (const auto& sc : result.surviving) {
    json s;
    s["levi"] = fmt_levi(sc.levi);
    s["mu_split"] = fmt_split(sc.mu_split);
    json eta = json::array();
    for (const auto& e : sc.eta) eta.push_back(format_ratvec(e.slopes));
    s["eta"] = eta;
    surviving.push_back(s);
  }
  doc["surviving"] = surviving;
  print_json(doc);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hnstrat: exact invariants of Harder-Narasimhan strata of modifications of G-bundles.\n"
      "Conventions: deg(x) = -sum(mu); a modification of b along mu has degree deg(b)+sum(mu).\n"
      "Rationals print as p/q in lowest terms; vectors are comma-separated; --mu accepts any\n"
      "order and is sorted internally (raw order echoed in reports)."};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "key = value config file mirroring the flags, under a [subcommand] section; "
                 "give it before the subcommand; command-line flags win");

  Request req;

  const auto addGroup = [&](CLI::App* cmd) {
    cmd->add_option("--group", req.group, "group, e.g. gl:5")->required();
    cmd->add_option("--twist", req.twist, "inner twist degree (default 0 = split)");
  };
  const auto addCommon = [&](CLI::App* cmd) {
    cmd->add_flag("--bound-2rho", req.bound2rho,
                  "also emit the <2rho, mu+lambda> normalization of the bound");
    cmd->add_flag("--oracle", req.oracle, "re-derive results via brute-force oracles");
  };

  CLI::App* enumerateCmd = app.add_subcommand("enumerate", "tabulate B(G,mu) with per-class reports");
  addGroup(enumerateCmd);
  enumerateCmd->add_option("--mu", req.mu, "cocharacter, comma-separated integers")->required();
  enumerateCmd->add_option("--format", req.format, "json|csv|markdown (default json)");
  enumerateCmd->add_option("--jobs", req.jobs, "worker threads for the sweep (output is identical)");
  addCommon(enumerateCmd);

  const auto addSingle = [&](const char* name, const char* desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    addGroup(cmd);
    cmd->add_option("--mu", req.mu, "cocharacter, comma-separated integers")->required();
    cmd->add_option("--nu", req.nu, "Newton point, comma-separated rationals p/q")->required();
    addCommon(cmd);
    return cmd;
  };
  addSingle("theta", "HN types of the stratum of nu");
  addSingle("dims", "Newton-stratum dimension vs HN-stratum bound");
  CLI::App* hndCmd = addSingle("hnd", "smallest Hodge-Newton decomposition levi");
  hndCmd->add_option("--levi", req.levi, "also test decomposability along this composition");
  addSingle("dor", "Newton-point realizability on the rigid-analytic flag side");
  addSingle("report", "full per-class report");

  CLI::App* fullyCmd = app.add_subcommand("fully-hnd", "check every non-basic class decomposes");
  addGroup(fullyCmd);
  fullyCmd->add_option("--mu", req.mu, "cocharacter, comma-separated integers")->required();
  addCommon(fullyCmd);

  CLI::App* polyCmd = app.add_subcommand("hn-polygon", "HN polygon of a block-scalar modification");
  polyCmd->add_option("--blocks", req.blocks, "summands as d/h:a entries, e.g. 5/7:0,5/7:1")
      ->required();
  polyCmd->add_option("--levi", req.levi, "split blockwise along this composition and check");
  polyCmd->add_option("--format", req.format, "json|csv (csv emits the vertex list)");
  addCommon(polyCmd);

  CLI::App* waCmd = app.add_subcommand("wa", "weak-admissibility containment pruner");
  waCmd->add_option("--b", req.b, "basic isocrystal blocks as d/h entries, e.g. 5/7,5/7")
      ->required();
  waCmd->add_option("--mu", req.mu, "cocharacter, comma-separated integers")->required();
  waCmd->add_option("--nu", req.nu, "Newton point nu-prime of the stratum")->required();
  addCommon(waCmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand("enumerate")) return cmd_enumerate(req);
    if (app.got_subcommand("theta")) return cmd_theta(req);
    if (app.got_subcommand("dims")) return cmd_dims(req);
    if (app.got_subcommand("hnd")) return cmd_hnd(req);
    if (app.got_subcommand("dor")) return cmd_dor(req);
    if (app.got_subcommand("report")) return cmd_report(req);
    if (app.got_subcommand("fully-hnd")) return cmd_fully_hnd(req);
    if (app.got_subcommand("hn-polygon")) return cmd_hn_polygon(req);
    if (app.got_subcommand("wa")) return cmd_wa(req);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const OracleMismatch& e) {
    std::cerr << "oracle mismatch: " << e.what() << "\n";
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
