#include "weil/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <sstream>

namespace weil::cli {

namespace {

using nlohmann::json;
using exactalg::Rational;

std::string rational_text(const Rational& x) {
  return x.get_den() == 1 ? x.get_num().get_str() : x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string decimal(const Rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x.get_d());
  return buf;
}

json rational_json(const Rational& x) { return {{"exact", rational_text(x)}, {"approx", decimal(x)}}; }

json descriptor_json(const frobmod::GroupDescriptor& g) {
  json div = json::object();
  for (const auto& [k, v] : g.divisible_coranks) div[k] = v;
  json finite = json::array();
  for (const auto& f : g.finite_part.invariant_factors()) finite.push_back(f.get_str());
  return {{"free_rank", g.free_rank},
          {"rational_dim", g.rational_dim},
          {"finite_invariants", finite},
          {"divisible_coranks", div},
          {"text", g.describe()}};
}

json torsion_json(const weilcoh::TorsionOrder& t) {
  switch (t.kind) {
    case weilcoh::TorsionOrder::Kind::Exact: return {{"kind", "exact"}, {"order", t.value.get_str()}};
    case weilcoh::TorsionOrder::Kind::Infinite: return {{"kind", "infinite"}};
    case weilcoh::TorsionOrder::Kind::Ambiguous:
      return {{"kind", "extension-ambiguous"},
              {"lower", t.value.get_str()},
              {"upper", t.upper ? json(t.upper->get_str()) : json(nullptr)}};
  }
  return {};
}

std::string order_text(const frobmod::GroupDescriptor& g) {
  const auto o = g.order();
  return o ? o->get_str() : "inf";
}

json report_json(const weilcoh::WeilReport& r) {
  json degrees = json::array();
  for (const auto& deg : r.degrees)
    degrees.push_back({{"t", deg.t},
                       {"coinvariants_prev", descriptor_json(deg.sub)},
                       {"invariants", descriptor_json(deg.quot)},
                       {"rank", deg.rank},
                       {"finitely_generated", deg.finitely_generated},
                       {"torsion", torsion_json(deg.torsion)}});
  json can = json::array();
  for (std::size_t t = 0; t < r.can.size(); ++t)
    can.push_back({{"t", t},
                   {"ker_order", order_text(r.can[t].ker)},
                   {"coker_order", order_text(r.can[t].coker)},
                   {"semisimple", r.can[t].semisimple_at_1}});
  const auto verdicts = weilcoh::conjecture_verdicts(r);
  json fg = json::object(), ss = json::object();
  for (const auto& [t, v] : verdicts.finitely_generated) fg[std::to_string(t)] = v;
  for (const auto& [t, v] : verdicts.semisimple) ss[std::to_string(t)] = v;
  return {{"q", r.q.get_str()},
          {"d", r.d},
          {"n", r.n},
          {"degrees", degrees},
          {"cup_e", can},
          {"chi_e", r.chi_e ? rational_json(*r.chi_e) : json(nullptr)},
          {"rho", r.rho},
          {"verdicts", {{"finitely_generated", fg}, {"semisimple", ss}}},
          {"warnings", r.warnings}};
}

void print_report(const weilcoh::WeilReport& r, std::ostream& out) {
  out << "Weil-etale cohomology, q = " << r.q << ", d = " << r.d << ", n = " << r.n << "\n";
  out << std::left << std::setw(4) << "t" << std::setw(22) << "(A^{t-1})_G" << std::setw(22) << "(A^t)^G"
      << std::setw(6) << "rank" << std::setw(6) << "f.g." << "torsion\n";
  for (const auto& deg : r.degrees)
    out << std::left << std::setw(4) << deg.t << std::setw(22) << deg.sub.describe() << std::setw(22)
        << deg.quot.describe() << std::setw(6) << deg.rank << std::setw(6)
        << (deg.finitely_generated ? "yes" : "no") << deg.torsion.describe() << "\n";
  out << "cup e (|ker can_t|, |coker can_t|):";
  for (std::size_t t = 0; t < r.can.size(); ++t)
    out << " " << t << ":(" << order_text(r.can[t].ker) << "," << order_text(r.can[t].coker) << ")"
        << (r.can[t].semisimple_at_1 ? "" : "*");
  out << "\n";
  out << "chi_e = " << (r.chi_e ? rational_text(*r.chi_e) + " (" + decimal(*r.chi_e) + ")" : "undefined (not semisimple)")
      << "\nrho = " << r.rho << "\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidInput("cannot write " + path);
  file << text;
  if (!file) throw InvalidInput("failed writing " + path);
}

}  // namespace

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kUnsupported;
  }
}

int cmd_lab(const chainlab::LabConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto report = chainlab::run_lab(config);
        out << report.summary();
        for (const auto& r : report.results)
          for (const auto& c : r.counterexamples) out << "counterexample " << r.name << ": " << c << "\n";
        return report.ok() ? kOk : kVerificationFailed;
      },
      err);
}

int cmd_weil(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto doc = read_document_file(path);
        const auto report = weilcoh::descent(etale_data(doc));
        if (as_json)
          out << report_json(report).dump(2) << "\n";
        else
          print_report(report, out);
        return kOk;
      },
      err);
}

int cmd_zeta_check(const std::string& path, bool as_json, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto doc = read_document_file(path);
        const auto z = zeta_input(doc);
        const auto data = etale_data(doc);
        const auto hodge = doc.hodge.value_or(zetaval::HodgeTable{});
        bool ok = true;
        json result;

        std::size_t counts_checked = 0;
        if (z.point_counts) {
          counts_checked = zetaval::check_point_counts(zetaval::zeta_from_factors(z), *z.point_counts);
          result["point_counts_checked"] = counts_checked;
        }
        const auto f = zetaval::verify_zeta_formula(z, data, hodge);
        ok = ok && f.passed();
        result["lhs"] = rational_json(f.lhs);
        result["chi_e"] = rational_json(f.chi_e);
        result["hodge_exponent"] = f.hodge_exponent.get_str();
        result["rhs"] = rational_json(f.rhs);
        result["sign"] = f.sign;
        result["rho_zeta"] = f.rho_zeta;
        result["rho_weil"] = f.rho_weil;
        result["values_match"] = f.values_match;
        result["rho_matches"] = f.rho_matches;

        const auto report = weilcoh::descent(data);
        std::string regulator_line;
        if (doc.pairing) {
          try {
            const auto reg = weilcoh::regulator_check(report, *doc.pairing);
            ok = ok && reg.passed;
            result["regulator"] = {{"R", reg.regulator.get_str()},
                                   {"torsion_product", rational_text(reg.torsion_product)},
                                   {"passed", reg.passed}};
            regulator_line = "regulator: R = " + reg.regulator.get_str() + ", torsion product " +
                             rational_text(reg.torsion_product) + (reg.passed ? ", consistent" : ", MISMATCH");
          } catch (const AmbiguousTorsion& e) {
            result["regulator"] = {{"skipped", e.what()}};
            regulator_line = std::string("regulator: skipped (") + e.what() + ")";
          }
        }
        std::vector<std::string> splitting;
        if (doc.motivic_q_dims) {
          const auto s = weilcoh::rational_splitting_check(report, *doc.motivic_q_dims);
          ok = ok && s.consistent;
          splitting = s.mismatches;
          result["rational_splitting"] = {{"consistent", s.consistent}, {"mismatches", s.mismatches}};
        }
        result["warnings"] = report.warnings;
        result["verdict"] = ok ? "pass" : "fail";

        if (as_json) {
          out << result.dump(2) << "\n";
        } else {
          if (z.point_counts) out << "point counts: consistent to order " << counts_checked << "\n";
          out << "lhs  = " << rational_text(f.lhs) << " (" << decimal(f.lhs) << ")\n"
              << "rhs  = chi_e * q^" << f.hodge_exponent << " = " << rational_text(f.chi_e) << " * "
              << z.q << "^" << f.hodge_exponent << " = " << rational_text(f.rhs) << " (" << decimal(f.rhs) << ")\n"
              << "pole order: zeta " << f.rho_zeta << ", rank H^" << 2 * doc.n << "_W " << f.rho_weil << "\n"
              << "values " << (f.values_match ? "equal up to sign" : "DIFFER")
              << (f.values_match ? (f.sign < 0 ? " (sign -)" : " (sign +)") : "") << "\n";
          if (!regulator_line.empty()) out << regulator_line << "\n";
          if (doc.motivic_q_dims)
            out << "rational splitting: " << (splitting.empty() ? "consistent" : "MISMATCH") << "\n";
          for (const auto& m : splitting) out << "  " << m << "\n";
          for (const auto& w : report.warnings) out << "warning: " << w << "\n";
          out << (ok ? "PASS" : "FAIL") << "\n";
        }
        return ok ? kOk : kVerificationFailed;
      },
      err);
}

int cmd_example_pd(long q, int d, long n, const std::string& output_path, std::ostream& out,
                   std::ostream& err) {
  return guarded(
      [&] {
        const auto ex = zetaval::example_projective_space(q, d, n);
        write_output(serialize_document(document_from_example(ex)), output_path, out);
        return kOk;
      },
      err);
}

int cmd_example_elliptic(long q, long a, std::optional<long> p_part, const std::string& output_path,
                         std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        std::optional<Integer> pp;
        if (p_part) pp = Integer(*p_part);
        const auto ex = zetaval::example_elliptic(q, a, pp);
        write_output(serialize_document(document_from_example(ex)), output_path, out);
        return kOk;
      },
      err);
}

}  // namespace weil::cli
