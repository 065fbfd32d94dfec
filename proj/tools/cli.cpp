#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "sigpath/error.hpp"
#include "sigpath/hyperbolic.hpp"
#include "sigpath/io.hpp"
#include "sigpath/parallel.hpp"
#include "sigpath/rtree.hpp"
#include "sigpath/signature.hpp"
#include "sigpath/treelike.hpp"
#include "sigpath/words.hpp"

namespace sigpath::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::optional<int> depth;
  double tol = 1e-9;
  std::string alpha;
  std::string out_file;
  std::string format = "json";
};

std::string num(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) s_ << (i ? "," : "") << cells[i];
    s_ << '\n';
  }
  std::string str() const { return s_.str(); }

 private:
  std::ostringstream s_;
};

std::vector<double> parse_alpha(const std::string& text) {
  if (text.empty()) throw DomainError("--alpha is required");
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad number '" + s + "' in --alpha");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) {
    const double a = to_double(parts[0]);
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("alpha must be finite and nonnegative");
    return {a};
  }
  if (parts.size() != 3) throw ParseError("--alpha must be a number or start:stop:factor");
  const double start = to_double(parts[0]), stop = to_double(parts[1]), factor = to_double(parts[2]);
  if (!(start > 0.0) || !(stop >= start) || !std::isfinite(stop)) throw DomainError("alpha sweep needs 0 < start <= stop");
  if (!(factor > 1.0)) throw DomainError("alpha sweep factor must exceed 1");
  std::vector<double> out;
  for (double a = start; a <= stop * (1.0 + 1e-12); a *= factor) out.push_back(a);
  return out;
}

int required_depth(const RunConfig& cfg, int fallback) {
  const int depth = cfg.depth.value_or(fallback);
  if (depth < 0) throw DomainError("--depth must be nonnegative");
  return depth;
}

std::string cmd_sig(const RunConfig& cfg) {
  const PiecewiseLinearPath p = path_from_json(read_json_file(cfg.input));
  const int depth = required_depth(cfg, 4);
  const TruncatedTensor s = path_signature(p, depth);
  std::vector<double> b(static_cast<std::size_t>(depth) + 1);
  bool trivial = true;
  double factorial = 1.0, scale = 1.0;
  const double l = p.length();
  for (int k = 0; k <= depth; ++k) {
    if (k > 0) {
      factorial *= k;
      scale *= l / k;
    }
    b[static_cast<std::size_t>(k)] = factorial * level_norm(s, k);
    if (k > 0) {
      for (double c : s.level(k)) trivial = trivial && std::abs(c) <= cfg.tol * std::max(1.0, scale);
    }
  }
  if (cfg.format == "csv") {
    Csv csv({"level", "word", "coefficient"});
    for (int k = 0; k <= depth; ++k) {
      auto level = s.level(k);
      std::vector<int> word(static_cast<std::size_t>(k), 1);
      for (std::size_t i = 0; i < level.size(); ++i) {
        std::string w;
        for (std::size_t j = 0; j < word.size(); ++j) w += (j ? "-" : "") + std::to_string(word[j]);
        csv.row({std::to_string(k), w, num(level[i])});
        for (int j = k - 1; j >= 0; --j) {
          if (++word[static_cast<std::size_t>(j)] <= p.dim()) break;
          word[static_cast<std::size_t>(j)] = 1;
        }
      }
    }
    return csv.str();
  }
  Json j;
  j["dim"] = p.dim();
  j["depth"] = depth;
  j["length"] = l;
  j["levels"] = tensor_levels_to_json(s);
  j["b"] = b;
  j["trivial"] = trivial;
  return j.dump(2) + "\n";
}

Word word_argument(const RunConfig& cfg) { return parse_word(cfg.input); }

std::string cmd_reduce_word(const RunConfig& cfg) {
  const Word w = word_argument(cfg);
  const Word r = free_reduce(w);
  if (cfg.format == "csv") {
    Csv csv({"input", "reduced", "trivial"});
    csv.row({to_string(w), to_string(r), r.empty() ? "true" : "false"});
    return csv.str();
  }
  Json j;
  j["input"] = to_string(w);
  j["reduced"] = to_string(r);
  j["trivial"] = r.empty();
  return j.dump(2) + "\n";
}

std::string cmd_certify_word(const RunConfig& cfg) {
  const Word w = word_argument(cfg);
  const Word r = free_reduce(w);
  const Certificate cert = w.alphabet_size() == 2 ? triviality_certificate(w) : certify_d_dim(w);
  if (cert.trivial != r.empty()) {
    throw ConsistencyError("certificate says " + std::string(cert.trivial ? "trivial" : "nontrivial") + " but '" +
                           to_string(w) + "' reduces to '" + to_string(r) + "'");
  }
  if (cfg.format == "csv") {
    Csv csv({"input", "reduced", "length", "N", "certificate"});
    csv.row({to_string(w), to_string(r), std::to_string(w.size()), std::to_string(cert.depth),
             cert.trivial ? "true" : "false"});
    return csv.str();
  }
  Json j;
  j["input"] = to_string(w);
  j["reduced"] = to_string(r);
  j["length"] = w.size();
  j["N"] = cert.depth;
  j["certificate"] = cert.trivial;
  j["first_nonzero_degree"] = cert.first_nonzero_degree;
  return j.dump(2) + "\n";
}

std::string cmd_develop(const RunConfig& cfg) {
  const PiecewiseLinearPath p = path_from_json(read_json_file(cfg.input));
  const std::vector<double> alphas = parse_alpha(cfg.alpha);
  const double l = p.length();
  std::vector<double> dist(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) { dist[i] = chord_distance(p, alphas[i]); });
  if (cfg.format == "csv") {
    Csv csv({"alpha", "distance", "defect"});
    for (std::size_t i = 0; i < alphas.size(); ++i) csv.row({num(alphas[i]), num(dist[i]), num(alphas[i] * l - dist[i])});
    return csv.str();
  }
  Json j;
  j["length"] = l;
  j["results"] = Json::array();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    j["results"].push_back(Json{{"alpha", alphas[i]}, {"distance", dist[i]}, {"defect", alphas[i] * l - dist[i]}});
  }
  return j.dump(2) + "\n";
}

std::string cmd_length(const RunConfig& cfg) {
  const PiecewiseLinearPath p = path_from_json(read_json_file(cfg.input));
  const std::vector<double> alphas = parse_alpha(cfg.alpha);
  const double l = p.length();
  const double top = *std::max_element(alphas.begin(), alphas.end()) * l;
  // The Poisson weights of mean alpha * l are negligible beyond this level.
  const int auto_level = static_cast<int>(std::ceil(top + 10.0 * std::sqrt(top) + 30.0));
  const int max_level = required_depth(cfg, auto_level);
  std::vector<PiecewiseLinearPath::Point> unit_points = p.points();
  if (l > 0.0) {
    for (auto& pt : unit_points) {
      for (double& x : pt) x /= l;
    }
  }
  const std::vector<double> b_unit = signature_level_norms(PiecewiseLinearPath(p.dim(), unit_points), max_level);
  std::vector<LengthEstimate> est(alphas.size());
  parallel_for(alphas.size(), [&](std::size_t i) {
    if (!(alphas[i] > 0.0)) throw DomainError("length recovery needs alpha > 0");
    est[i] = length_recovery_rescaled(b_unit, l, alphas[i]);
  });
  if (cfg.format == "csv") {
    Csv csv({"alpha", "log_c", "c", "estimate"});
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      csv.row({num(alphas[i]), num(est[i].log_c), num(est[i].c), num(est[i].estimate)});
    }
    return csv.str();
  }
  Json j;
  j["length"] = l;
  j["max_level"] = max_level;
  j["results"] = Json::array();
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    Json row{{"alpha", alphas[i]}, {"log_c", est[i].log_c}};
    row["c"] = std::isfinite(est[i].c) ? Json(est[i].c) : Json(nullptr);
    row["estimate"] = est[i].estimate;
    j["results"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string points_csv(const PiecewiseLinearPath& p) {
  std::vector<std::string> header;
  for (int c = 1; c <= p.dim(); ++c) header.push_back("x" + std::to_string(c));
  Csv csv(header);
  for (const auto& pt : p.points()) {
    std::vector<std::string> cells;
    for (double x : pt) cells.push_back(num(x));
    csv.row(cells);
  }
  return csv.str();
}

std::string cmd_reduce_path(const RunConfig& cfg) {
  const PiecewiseLinearPath r = reduce_path(path_from_json(read_json_file(cfg.input)));
  if (cfg.format == "csv") return points_csv(r);
  return path_to_json(r).dump(2) + "\n";
}

std::string cmd_treecheck(const RunConfig& cfg) {
  const PiecewiseLinearPath p = path_from_json(read_json_file(cfg.input));
  const bool tree_like = is_tree_like(p, std::max(1, required_depth(cfg, 6)), cfg.tol);
  std::optional<HeightFunction> h = build_height(p);
  if (h.has_value() != tree_like) throw ConsistencyError("height construction disagrees with path reduction");
  if (h && !verify_height(p, *h, std::max(p.length() / 256.0, 1e-12), std::max(cfg.tol, 1e-9))) {
    throw ConsistencyError("constructed height function fails verification");
  }
  if (cfg.format == "csv") {
    Csv csv({"tree_like", "length", "height_variation"});
    csv.row({tree_like ? "true" : "false", num(p.length()), h ? num(h->total_variation()) : ""});
    return csv.str();
  }
  Json j;
  j["tree_like"] = tree_like;
  j["length"] = p.length();
  if (h) {
    j["height"] = height_to_json(*h);
    j["height_variation"] = h->total_variation();
  }
  return j.dump(2) + "\n";
}

std::string cmd_rtree(const RunConfig& cfg) {
  const HeightFunction h = height_from_json(read_json_file(cfg.input));
  const QuotientTree t = build_quotient_tree(h, h.times());
  if (cfg.format == "csv") {
    Csv csv({"parent", "child", "length"});
    for (const auto& e : t.edges) csv.row({std::to_string(e.parent), std::to_string(e.child), num(e.length)});
    return csv.str();
  }
  return tree_to_json(t).dump(2) + "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Path signatures, tree-like reduction and hyperbolic development", "sigpath"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--depth", cfg.depth, "Truncation depth / maximum level");
  app.add_option("--tol", cfg.tol, "Tolerance (default 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--alpha", cfg.alpha, "Scale, or sweep start:stop:factor");
  app.add_option("--out", cfg.out_file, "Write the report to this file");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  struct Command {
    const char* name;
    const char* help;
    const char* arg;
    std::string (*fn)(const RunConfig&);
  };
  const Command commands[] = {
      {"sig", "Truncated signature of a path file", "path", cmd_sig},
      {"reduce-word", "Free reduction of a word", "word", cmd_reduce_word},
      {"certify-word", "Development certificate for triviality of a word", "word", cmd_certify_word},
      {"develop", "Hyperbolic development: chord distance and defect", "path", cmd_develop},
      {"length", "Length recovery from signature level norms", "path", cmd_length},
      {"reduce-path", "Reduced representative of a path", "path", cmd_reduce_path},
      {"treecheck", "Tree-like test with height function", "path", cmd_treecheck},
      {"rtree", "Quotient R-tree of a height function", "height", cmd_rtree},
  };
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option(c.arg, cfg.input, std::string(c.arg) + (std::string(c.arg) == "word" ? " string" : " JSON file"))
        ->required();
    sub->callback([&cfg, name = c.name] { cfg.command = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string report;
    for (const Command& c : commands) {
      if (cfg.command == c.name) report = c.fn(cfg);
    }
    if (cfg.out_file.empty()) {
      out << report;
    } else {
      std::ofstream f(cfg.out_file, std::ios::binary);
      if (!f) throw DomainError("cannot write " + cfg.out_file);
      f << report;
    }
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ConsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace sigpath::cli
