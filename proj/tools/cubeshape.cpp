// Command-line front end: field/shape inspection and censuses over pure
// cubic fields presented by carefree couples.
//
// Exit codes: 0 success, 2 invalid input, 3 internal consistency failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cubeshape/arith.hpp"
#include "cubeshape/census.hpp"
#include "cubeshape/errors.hpp"
#include "cubeshape/fields.hpp"
#include "cubeshape/rational.hpp"
#include "cubeshape/shapes.hpp"

namespace {

using namespace cubeshape;

// 12 significant digits, fixed across platforms and thread counts.
std::string fd(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Rational parse_rational(const std::string& s) {
  if (auto slash = s.find('/'); slash != std::string::npos) {
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  }
  if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
      s.find('E') != std::string::npos) {
    return Rational::from_double(std::stod(s));
  }
  return Rational(std::stoll(s));
}

unsigned resolve_threads(unsigned flag_value) {
  if (const char* env = std::getenv("CUBESHAPE_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v < 1) throw std::invalid_argument("CUBESHAPE_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, flag_value);
}

std::string field_json(const fields::PureCubicField& K, bool with_basis) {
  std::ostringstream ss;
  ss << "{\"a\": " << K.couple.a << ", \"b\": " << K.couple.b << ", \"m\": " << K.m
     << ", \"m_prime\": " << K.m_prime << ", \"type\": \"" << fields::to_string(K.type)
     << "\", \"discriminant\": " << K.discriminant << ", \"ratio_num\": " << K.ratio.num()
     << ", \"ratio_den\": " << K.ratio.den();
  if (with_basis) {
    auto basis = fields::integral_basis(K);
    ss << ", \"basis\": [";
    for (int i = 0; i < 3; ++i) {
      const auto& e = basis.elements[i];
      ss << (i ? ", [" : "[") << "\"" << e.c0.str() << "\", \"" << e.c1.str() << "\", \""
         << e.c2.str() << "\"]";
    }
    ss << "], \"basis_sign\": " << basis.sign;
  }
  ss << "}";
  return ss.str();
}

std::string shape_json(const fields::PureCubicField& K, const shapes::ShapePoint& p) {
  std::ostringstream ss;
  ss << "{\"a\": " << K.couple.a << ", \"b\": " << K.couple.b << ", \"type\": \""
     << fields::to_string(p.type) << "\", \"x_num\": " << p.x.num()
     << ", \"x_den\": " << p.x.den() << ", \"y_cubed_num\": " << p.y_cubed.num()
     << ", \"y_cubed_den\": " << p.y_cubed.den() << ", \"z\": [" << fd(p.z.real()) << ", "
     << fd(p.z.imag()) << "], \"reduced_z\": [" << fd(p.reduced_z.real()) << ", "
     << fd(p.reduced_z.imag()) << "], \"reducer\": [[" << p.reducer.m[0][0] << ", "
     << p.reducer.m[0][1] << "], [" << p.reducer.m[1][0] << ", " << p.reducer.m[1][1] << "]]}";
  return ss.str();
}

std::string constant_json(const arith::ConstantEstimate& c) {
  std::ostringstream ss;
  ss << "{\"value\": " << fd(c.value) << ", \"prime_bound\": " << c.prime_bound
     << ", \"tail_bound\": " << fd(c.tail_bound) << "}";
  return ss.str();
}

// Scatter of reduced shape points over the fundamental-domain outline.
void write_svg(const std::string& path,
               const std::vector<std::pair<std::complex<double>, fields::FieldType>>& pts) {
  double ymax = 1.8;
  for (const auto& [z, t] : pts) ymax = std::max(ymax, z.imag());
  ymax += 0.15;
  const double S = 900.0;                   // pixels per unit
  const double x0 = -0.12, x1 = 0.62;       // view window in math coords
  const double y0 = 0.55, y1 = ymax;
  auto px = [&](double x) { return (x - x0) * S; };
  auto py = [&](double y) { return (y1 - y) * S; };

  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open svg output file: " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fd(px(x1)) << "\" height=\""
     << fd(py(y0)) << "\" viewBox=\"0 0 " << fd(px(x1)) << " " << fd(py(y0)) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // domain boundary: x = 0 and x = 1/2 above the unit circle, plus the arc
  os << "<path d=\"M " << fd(px(0)) << " " << fd(py(y1)) << " L " << fd(px(0)) << " "
     << fd(py(1.0)) << " A " << fd(S) << " " << fd(S) << " 0 0 1 " << fd(px(0.5)) << " "
     << fd(py(std::sqrt(3.0) / 2)) << " L " << fd(px(0.5)) << " " << fd(py(y1))
     << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\"/>\n";
  for (const auto& [z, t] : pts) {
    os << "<circle cx=\"" << fd(px(z.real())) << "\" cy=\"" << fd(py(z.imag()))
       << "\" r=\"2\" fill=\"" << (t == fields::FieldType::I ? "#2563eb" : "#dc2626")
       << "\" fill-opacity=\"0.6\"/>\n";
  }
  os << "<text x=\"8\" y=\"16\" font-family=\"sans-serif\" font-size=\"13\">reduced shapes: "
     << "blue = type I, red = type II</text>\n";
  os << "</svg>\n";
}

struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& out() { return *os; }
};

int run_field(std::int64_t m, const std::string& out_path) {
  Sink sink(out_path);
  sink.out() << field_json(fields::canonicalize(m), true) << "\n";
  return 0;
}

int run_shape(std::optional<std::int64_t> m, std::optional<std::int64_t> scan_X,
              const std::vector<std::string>& window_raw, const std::string& svg_path,
              const std::string& out_path) {
  std::optional<fields::RatioWindow> window;
  if (!window_raw.empty()) {
    if (window_raw.size() != 2) throw std::invalid_argument("--window needs R1 R2");
    window = fields::RatioWindow{parse_rational(window_raw[0]), parse_rational(window_raw[1])};
  }
  std::vector<fields::PureCubicField> list;
  if (m) {
    list.push_back(fields::canonicalize(*m));
  } else if (scan_X) {
    list = fields::list_fields(*scan_X, window);
  } else {
    throw std::invalid_argument("shape: give m or --scan X");
  }
  Sink sink(out_path);
  std::vector<std::pair<std::complex<double>, fields::FieldType>> pts;
  pts.reserve(list.size());
  for (const auto& K : list) {
    shapes::ShapePoint p = shapes::shape(K);
    sink.out() << shape_json(K, p) << "\n";
    pts.emplace_back(p.reduced_z, p.type);
  }
  if (!svg_path.empty()) write_svg(svg_path, pts);
  return 0;
}

int run_count_couples(const std::vector<std::string>& args, const std::string& format,
                      unsigned threads, const std::string& out_path) {
  std::int64_t N = std::stoll(args[0]);
  Rational R = parse_rational(args[1]);
  auto cc = census::count_couples(N, R, threads);
  Sink sink(out_path);
  if (format == "json") {
    sink.out() << "{\"N\": " << cc.N << ", \"R\": \"" << cc.R.str() << "\", \"total\": "
               << cc.total << ", \"type_i\": " << cc.type_i << ", \"type_ii\": " << cc.type_ii
               << "}\n";
  } else {
    sink.out() << "key,value\nN," << cc.N << "\nR," << cc.R.str() << "\ntotal," << cc.total
               << "\ntype_i," << cc.type_i << "\ntype_ii," << cc.type_ii << "\n";
  }
  return 0;
}

int run_count_fields(const std::vector<std::string>& args, const std::string& format,
                     unsigned threads, const std::string& out_path) {
  std::int64_t X = std::stoll(args[0]);
  Rational R1 = parse_rational(args[1]);
  Rational R2 = parse_rational(args[2]);
  auto fc = census::count_fields(X, R1, R2, threads);
  Sink sink(out_path);
  if (format == "json") {
    sink.out() << "{\"X\": " << fc.X << ", \"R1\": \"" << fc.R1.str() << "\", \"R2\": \""
               << fc.R2.str() << "\", \"n_i\": " << fc.n_i << ", \"n_ii\": " << fc.n_ii
               << ", \"n_total\": " << fc.total() << "}\n";
  } else {
    sink.out() << "key,value\nX," << fc.X << "\nR1," << fc.R1.str() << "\nR2," << fc.R2.str()
               << "\nn_i," << fc.n_i << "\nn_ii," << fc.n_ii << "\nn_total," << fc.total()
               << "\n";
  }
  return 0;
}

int run_count_equidist(const std::vector<std::string>& args, const std::string& format,
                       unsigned threads, std::uint64_t prime_bound,
                       const std::string& out_path) {
  if (args.size() < 4)
    throw std::invalid_argument("--equidist needs: type X edge edge [edge...]");
  fields::FieldType type;
  if (args[0] == "I" || args[0] == "i")
    type = fields::FieldType::I;
  else if (args[0] == "II" || args[0] == "ii")
    type = fields::FieldType::II;
  else
    throw std::invalid_argument("--equidist type must be I or II");
  std::int64_t X = std::stoll(args[1]);
  std::vector<double> edges;
  for (std::size_t i = 2; i < args.size(); ++i) edges.push_back(std::stod(args[i]));

  auto C = arith::euler_product_C(prime_bound);
  auto em = census::empirical_measure(type, X, edges, C, threads);

  Sink sink(out_path);
  if (format == "json") {
    std::ostream& os = sink.out();
    os << "{\"X\": " << em.X << ", \"type\": \"" << fields::to_string(em.type)
       << "\", \"constants\": {\"C\": " << constant_json(C) << "}, \"normalizer\": "
       << fd(em.normalizer_value) << ", \"bins\": [";
    for (std::size_t i = 0; i + 1 < em.edges.size(); ++i) {
      double target = std::log(em.edges[i + 1] / em.edges[i]);
      os << (i ? ", {" : "{") << "\"R1\": " << fd(em.edges[i]) << ", \"R2\": "
         << fd(em.edges[i + 1]) << ", \"count\": " << em.counts[i] << ", \"normalized_mass\": "
         << fd(em.masses[i]) << ", \"target\": " << fd(target) << ", \"deviation\": "
         << fd(std::abs(em.masses[i] - target)) << "}";
    }
    os << "]}\n";
  } else {
    std::ostream& os = sink.out();
    os << "X,type,R1,R2,count,normalized_mass,target,deviation\n";
    for (std::size_t i = 0; i + 1 < em.edges.size(); ++i) {
      double target = std::log(em.edges[i + 1] / em.edges[i]);
      os << em.X << "," << fields::to_string(em.type) << "," << fd(em.edges[i]) << ","
         << fd(em.edges[i + 1]) << "," << em.counts[i] << "," << fd(em.masses[i]) << ","
         << fd(target) << "," << fd(std::abs(em.masses[i] - target)) << "\n";
    }
  }
  return 0;
}

int run_count_constants(std::uint64_t prime_bound, const std::string& format,
                        const std::string& out_path) {
  auto C = arith::euler_product_C(prime_bound);
  auto kap = arith::kappa(prime_bound);
  auto gam = arith::euler_gamma();
  double c_i = census::normalizer(fields::FieldType::I, C.value);
  double c_ii = census::normalizer(fields::FieldType::II, C.value);
  Rational ratio = census::normalizer_multiplier(fields::FieldType::I) /
                   census::normalizer_multiplier(fields::FieldType::II);
  Sink sink(out_path);
  if (format == "csv") {
    sink.out() << "key,value\nC," << fd(C.value) << "\nC_tail_bound," << fd(C.tail_bound)
               << "\nkappa," << fd(kap.value) << "\nkappa_tail_bound," << fd(kap.tail_bound)
               << "\ngamma," << fd(gam.value) << "\nC_I," << fd(c_i) << "\nC_II," << fd(c_ii)
               << "\nC_ratio," << ratio.str() << "\n";
  } else {
    sink.out() << "{\"C\": " << constant_json(C) << ", \"kappa\": " << constant_json(kap)
               << ", \"gamma\": " << constant_json(gam) << ", \"C_I\": " << fd(c_i)
               << ", \"C_II\": " << fd(c_ii) << ", \"C_ratio\": \"" << ratio.str() << "\"}\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shape invariants and censuses of pure cubic fields"};
  app.require_subcommand(1);

  // field
  std::int64_t field_m = 0;
  std::string field_out;
  auto* cmd_field = app.add_subcommand(
      "field", "canonicalize m into its carefree couple; print couple, type, "
               "discriminant, and integral basis as JSON");
  cmd_field->add_option("m", field_m, "radicand of the field Q(m^(1/3)), m >= 2")->required();
  cmd_field->add_option("--out", field_out, "write to file instead of stdout");

  // shape
  std::optional<std::int64_t> shape_m;
  std::optional<std::int64_t> shape_scan;
  std::vector<std::string> shape_window;
  std::string shape_svg, shape_out;
  auto* cmd_shape = app.add_subcommand(
      "shape", "exact shape point, reduced representative in the fundamental "
               "domain, and the reducing matrix, as JSON lines");
  cmd_shape->add_option("m", shape_m, "single radicand");
  cmd_shape->add_option("--scan", shape_scan, "all fields with |discriminant| <= X");
  cmd_shape->add_option("--window", shape_window,
                        "open ratio window R1 R2 restricting the scan")
      ->expected(2);
  cmd_shape->add_option("--svg", shape_svg, "scatter the reduced points into an SVG file");
  cmd_shape->add_option("--out", shape_out, "write JSON lines to file instead of stdout");

  // count
  std::vector<std::string> couples_args, fields_args, equidist_args;
  std::uint64_t constants_bound = 0;
  std::string count_format = "csv", count_out;
  unsigned count_threads = 1;
  std::uint64_t count_prime_bound = 1000000;
  auto* cmd_count = app.add_subcommand(
      "count", "censuses: strongly carefree couples in a cone, fields by "
               "discriminant and ratio window, equidistribution tables, "
               "analytic constants");
  auto* opt_couples = cmd_count
                          ->add_option("--couples", couples_args,
                                       "N R: couples with ab <= N, 1/R <= a/b <= R")
                          ->expected(2);
  auto* opt_fields = cmd_count
                         ->add_option("--fields", fields_args,
                                      "X R1 R2: fields with |disc| <= X, R1 < ratio < R2")
                         ->expected(3);
  auto* opt_equidist =
      cmd_count
          ->add_option("--equidist", equidist_args,
                       "type X edges...: binned distribution of ratio^(1/3)")
          ->expected(-4);
  auto* opt_constants = cmd_count->add_option(
      "--constants", constants_bound, "P: print C, kappa, gamma at prime bound P");
  cmd_count->add_option("--format", count_format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_count->add_option("--threads", count_threads,
                        "worker threads (CUBESHAPE_THREADS overrides)");
  cmd_count->add_option("--prime-bound", count_prime_bound,
                        "prime cutoff for the normalizing constant (default 1e6)");
  cmd_count->add_option("--out", count_out, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_field->parsed()) return run_field(field_m, field_out);
    if (cmd_shape->parsed())
      return run_shape(shape_m, shape_scan, shape_window, shape_svg, shape_out);
    if (cmd_count->parsed()) {
      unsigned threads = resolve_threads(count_threads);
      int modes = int(opt_couples->count() > 0) + int(opt_fields->count() > 0) +
                  int(opt_equidist->count() > 0) + int(opt_constants->count() > 0);
      if (modes != 1)
        throw std::invalid_argument(
            "count: give exactly one of --couples, --fields, --equidist, --constants");
      if (opt_couples->count())
        return run_count_couples(couples_args, count_format, threads, count_out);
      if (opt_fields->count())
        return run_count_fields(fields_args, count_format, threads, count_out);
      if (opt_equidist->count())
        return run_count_equidist(equidist_args, count_format, threads, count_prime_bound,
                                  count_out);
      return run_count_constants(constants_bound, count_format, count_out);
    }
  } catch (const consistency_error& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
