#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypb/geometry.hpp"
#include "hypb/growth.hpp"
#include "hypb/langrate.hpp"
#include "hypb/paths.hpp"
#include "hypb/tiling.hpp"
#include "hypb/words.hpp"

using nlohmann::json;
using namespace hypb;

namespace {

std::string fmt(double x) {  // 14 significant digits, deterministic
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14g", x);
  return buf;
}

std::string fmtTable(double x) {  // the tables print 14 decimal places
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.14f", x);
  return buf;
}

void emit(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(outPath);
  if (!out) throw param_error("cannot open output file: " + outPath);
  out << text;
}

std::string wordString(const Word& w) {
  std::string s;
  for (int a : w.letters) s += char('0' + a);
  return s;
}

const std::vector<std::pair<int, int>> kTable1Rows = {
    {3, 8}, {4, 6}, {4, 8}, {5, 4}, {5, 6}, {5, 8}, {6, 4}, {6, 6},
    {6, 8}, {7, 4}, {7, 6}, {7, 8}, {8, 4}, {8, 6}, {8, 8}};
const std::vector<std::pair<int, int>> kTable3Rows = {
    {3, 7}, {3, 9}, {4, 5}, {4, 7}, {4, 9}, {5, 5}, {5, 7},
    {5, 9}, {6, 5}, {6, 7}, {6, 9}, {7, 3}, {7, 5}, {7, 7}};

RuleSet parseRule(const std::string& name, int q) {
  if (name == "auto") return q % 2 == 0 ? RuleSet::E : RuleSet::OUpper;
  if (name == "E" || name == "e") return RuleSet::E;
  if (name == "O-upper" || name == "o-upper") return RuleSet::OUpper;
  if (name == "O-lower" || name == "o-lower") return RuleSet::OLower;
  throw param_error("unknown rule set: " + name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyperbolic (p,q)-tiling billiards toolkit"};
  app.require_subcommand(1);

  int p = 0, q = 0, depth = 0, terms = 10, n = 0, kmax = 5, cap = 1 << 20;
  double tol = 1e-12;
  std::string word, outPath, svgPath, ruleName = "auto", mode;
  bool asCsv = false, listClasses = false, report = false;
  int which = 1, fromTile = -1, toTile = -1, drawDepth = 4, censusDepth = 6;
  double tableTol = 1e-14;  // tight enough that 14 printed decimals are stable
  std::string format = "csv", saveGraph;

  auto addPQ = [&](CLI::App* cmd) {
    cmd->add_option("--p", p, "sides per tile")->required()->envname("HYPBILL_P");
    cmd->add_option("--q", q, "tiles per vertex")->required()->envname("HYPBILL_Q");
  };
  auto addOut = [&](CLI::App* cmd) { cmd->add_option("--out", outPath, "output file (default stdout)"); };

  auto* cGrowth = app.add_subcommand("growth", "growth series and tile layer counts");
  addPQ(cGrowth);
  cGrowth->add_option("--terms", terms, "number of coefficients")->envname("HYPBILL_TERMS");
  cGrowth->add_flag("--csv", asCsv, "CSV instead of JSON");
  addOut(cGrowth);

  auto* cAlpha = app.add_subcommand("alpha", "tiling growth rate");
  addPQ(cAlpha);
  cAlpha->add_option("--tol", tol, "certification tolerance")->envname("HYPBILL_TOL");
  addOut(cAlpha);

  auto* cTables = app.add_subcommand("tables", "reproduce the growth-rate tables");
  cTables->add_option("--which", which, "1 (q even) or 3 (q odd)")->required();
  cTables->add_option("--format", format, "csv|json");
  cTables->add_option("--tol", tableTol, "certification tolerance");
  addOut(cTables);

  auto* cWord = app.add_subcommand("word", "billiard-word operations");
  cWord->require_subcommand(1);
  auto* cCheck = cWord->add_subcommand("check", "admissibility of one word");
  addPQ(cCheck);
  cCheck->add_option("--word", word, "word as digits, letters 1..p")->required();
  cCheck->add_option("--rule,--rules", ruleName, "auto|e|o-upper|o-lower");
  addOut(cCheck);
  auto* cClass = cWord->add_subcommand("class", "equivalence class of one word");
  addPQ(cClass);
  cClass->add_option("--word", word, "word as digits, letters 1..p")->required();
  cClass->add_option("--cap", cap, "class-closure size cap");
  addOut(cClass);
  auto* cClasses = cWord->add_subcommand("classes", "count admissible classes of length n");
  addPQ(cClasses);
  cClasses->add_option("--n,--length", n, "word length")->required();
  cClasses->add_flag("--list", listClasses, "include canonical representatives");
  addOut(cClasses);

  auto* cPath = app.add_subcommand("path", "tiling-path operations");
  cPath->require_subcommand(1);
  auto* cDist = cPath->add_subcommand("dist", "tiling distance of a word's path or a tile pair");
  addPQ(cDist);
  cDist->add_option("--word", word, "word as digits, letters 1..p");
  cDist->add_option("--from", fromTile, "tile id (alternative to --word)");
  cDist->add_option("--to", toTile, "tile id (alternative to --word)");
  cDist->add_option("--depth", depth, "generation depth (default word length + 3)");
  addOut(cDist);
  auto* cMin = cPath->add_subcommand("minimal", "minimality report for the path of a word");
  addPQ(cMin);
  cMin->add_option("--word", word, "word as digits, letters 1..p")->required();
  cMin->add_option("--depth", depth, "generation depth (default word length + 3)");
  addOut(cMin);

  auto* cLang = app.add_subcommand("lang-rate", "language growth rates via de Bruijn graphs");
  addPQ(cLang);
  cLang->add_option("--rule,--rules", ruleName, "auto|e|o-upper|o-lower");
  cLang->add_option("--tol", tol, "Perron-rate tolerance");
  cLang->add_option("--count-n", n, "also count allowed words of this length");
  cLang->add_flag("--report", report, "full complexity report (all columns)");
  addOut(cLang);

  auto* cDraw = app.add_subcommand("draw", "SVG rendering of the realized tiling");
  addPQ(cDraw);
  cDraw->add_option("--depth", drawDepth, "generation depth");
  cDraw->add_option("--svg", svgPath, "output SVG path")->required();
  cDraw->add_option("--word", word, "overlay a traced witness segment for this word's class");
  cDraw->add_option("--save-graph", saveGraph, "also write the tiling graph as JSON");

  auto* cCensus = app.add_subcommand("census", "generalized-diagonal census from a base vertex");
  addPQ(cCensus);
  cCensus->add_option("--depth", censusDepth, "generation depth");
  cCensus->add_option("--kmax", kmax, "largest combinatorial length counted");
  addOut(cCensus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    TilingParams P{p, q};
    std::ostringstream out;

    if (cGrowth->parsed()) {
      auto s = growth_series(P);
      auto coeff = series_coefficients(s, terms);
      if (asCsv) {
        out << "n,N_td\n";
        for (int i = 0; i <= terms; ++i) out << i << "," << coeff[i].str() << "\n";
      } else {
        json j{{"schema", 1}, {"p", p}, {"q", q}};
        j["numerator"] = s.num;
        j["denominator"] = s.den;
        std::vector<std::string> c;
        for (const auto& x : coeff) c.push_back(x.str());
        j["coefficients"] = c;
        out << j.dump(2) << "\n";
      }
    } else if (cAlpha->parsed()) {
      auto r = tiling_growth_rate(P, tol);
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"alpha", fmt(r.alpha)},
             {"precision", fmt(r.precision)}};
      out << j.dump(2) << "\n";
    } else if (cTables->parsed()) {
      if (format != "csv" && format != "json") throw param_error("--format must be csv or json");
      json rows = json::array();
      if (which == 1) {
        for (auto [tp, tq] : kTable1Rows)
          rows.push_back({{"p", tp}, {"q", tq},
                          {"alpha", fmtTable(tiling_growth_rate({tp, tq}, tableTol).alpha)}});
        if (format == "csv") {
          out << "p,q,alpha\n";
          for (const auto& r : rows)
            out << r["p"] << "," << r["q"] << "," << r["alpha"].get<std::string>() << "\n";
        }
      } else if (which == 3) {
        for (auto [tp, tq] : kTable3Rows) {
          auto rep = complexity_report({tp, tq}, tableTol);
          rows.push_back({{"p", tp}, {"q", tq}, {"l", fmtTable(*rep.ell)},
                          {"alpha_power", fmtTable(*rep.alphaPow)},
                          {"alpha", fmtTable(rep.alpha)}, {"u", fmtTable(*rep.upper)}});
        }
        if (format == "csv") {
          out << "p,q,l,alpha_power,alpha,u\n";
          for (const auto& r : rows)
            out << r["p"] << "," << r["q"] << "," << r["l"].get<std::string>() << ","
                << r["alpha_power"].get<std::string>() << "," << r["alpha"].get<std::string>()
                << "," << r["u"].get<std::string>() << "\n";
        }
      } else {
        throw param_error("--which must be 1 or 3");
      }
      if (format == "json") {
        json j{{"schema", 1}, {"which", which}, {"rows", rows}};
        out << j.dump(2) << "\n";
      }
    } else if (cCheck->parsed()) {
      Word w = parse_word(P, word);
      auto v = check_admissible(w, parseRule(ruleName, q));
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"word", word},
             {"admissible", v.admissible}};
      if (v.violation) {
        j["violation"] = {{"rule", v.violation->rule},
                          {"position", v.violation->position},
                          {"length", v.violation->length}};
        out << j.dump(2) << "\n";
        std::cerr << "violation " << v.violation->rule << " at position "
                  << v.violation->position << ", length " << v.violation->length << "\n";
      } else {
        out << j.dump(2) << "\n";
      }
    } else if (cClass->parsed()) {
      auto cls = word_class(parse_word(P, word), (std::size_t)cap);
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"word", word},
             {"canonical", wordString(cls.canonical)},
             {"classAdmissible", cls.classAdmissible}};
      std::vector<std::string> members;
      for (const auto& m : cls.members) members.push_back(wordString(m));
      j["members"] = members;
      out << j.dump(2) << "\n";
    } else if (cClasses->parsed()) {
      auto e = enumerate_admissible_classes(P, n);
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"n", n}, {"count", e.count}};
      if (listClasses) {
        std::vector<std::string> cs;
        for (const auto& w : e.canonicals) cs.push_back(wordString(w));
        j["canonicals"] = cs;
      }
      out << j.dump(2) << "\n";
    } else if (cDist->parsed() && word.empty()) {
      if (fromTile < 0 || toTile < 0)
        throw param_error("path dist needs --word or both --from and --to");
      if (depth <= 0) depth = 6;
      auto g = build_tiling(P, depth);
      if (fromTile >= g.tileCount() || toTile >= g.tileCount())
        throw param_error("tile id out of range for this depth");
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"depth", depth}, {"from", fromTile},
             {"to", toTile}, {"distance", tiling_distance(g, fromTile, toTile)}};
      out << j.dump(2) << "\n";
    } else if (cDist->parsed() || cMin->parsed()) {
      Word w = parse_word(P, word);
      if (depth <= 0) depth = (int)w.letters.size() + 3;
      auto g = build_tiling(P, depth);
      auto path = word_to_path(w, g);
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"word", word}, {"depth", depth},
             {"tiles", path.tiles}, {"edges", path.edges}, {"length", path.length()}};
      if (cDist->parsed()) {
        j["distance"] = tiling_distance(g, path.tiles.front(), path.tiles.back());
      } else {
        MinimalityReport rep = q % 2 == 0 ? is_minimal(g, edge_geodesic_classes(g), path)
                                          : is_minimal(g, zigzag_classes(g), path);
        j["minimal"] = rep.minimal;
        j["distance"] = rep.distance;
        if (rep.doubledClass) j["doubledClass"] = *rep.doubledClass;
      }
      out << j.dump(2) << "\n";
    } else if (cLang->parsed()) {
      if (report) {
        auto rep = complexity_report(P, tol);
        json j{{"schema", 1}, {"p", p}, {"q", q}, {"alpha", fmt(rep.alpha)}};
        if (rep.ell) j["l"] = fmt(*rep.ell);
        if (rep.alphaPow) j["alpha_power"] = fmt(*rep.alphaPow);
        if (rep.upper) j["u"] = fmt(*rep.upper);
        out << j.dump(2) << "\n";
      } else {
        auto f = forbidden_set(P, parseRule(ruleName, q));
        auto g = debruijn(f);
        json j{{"schema", 1}, {"p", p}, {"q", q},
               {"forbiddenWords", (int)f.forbidden.size()},
               {"vertices", (int)g.vertices.size()},
               {"rate", fmt(perron_rate(g, tol))}};
        if (n > 0) j["wordCount"] = word_count(f, n).str();
        out << j.dump(2) << "\n";
      }
    } else if (cDraw->parsed()) {
      auto g = build_tiling(P, drawDepth);
      auto r = realize(g);
      if (!saveGraph.empty()) emit(graph_to_json(g), saveGraph);
      std::string svg;
      if (!word.empty()) {
        auto cls = word_class(parse_word(P, word));
        auto wit = realize_word_class(r, g, cls);
        if (!wit.segment) throw numeric_error("no witness segment found for the class");
        GeodesicSegment seg = *wit.segment;
        svg = render_svg(r, g, &seg);
      } else {
        svg = render_svg(r, g);
      }
      emit(svg, svgPath);
      return 0;
    } else if (cCensus->parsed()) {
      auto g = build_tiling(P, censusDepth);
      auto r = realize(g);
      auto c = diagonal_census(r, g, g.tileVertices[g.baseTile][0], kmax);
      json j{{"schema", 1}, {"p", p}, {"q", q}, {"depth", censusDepth},
             {"kMax", c.kMax}, {"trustedK", c.trustedK}, {"excluded", c.excluded},
             {"nCl", c.nCl}, {"nClPrim", c.nClPrim}, {"gd", c.gd}};
      out << j.dump(2) << "\n";
    }

    emit(out.str(), outPath);
    return 0;
  } catch (const param_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
