#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "maxmin/cli.hpp"

namespace {

using maxmin::cli::RunConfig;

void add_output(CLI::App* sub, RunConfig& c, std::string& format) {
  sub->add_option("-o,--output", c.output, "Write the result here instead of standard output");
  sub->add_option("--format", format, "json, text, svg (polygon2d) or obj (polyhedron3d)")
      ->check(CLI::IsMember({"json", "text", "svg", "obj"}));
  sub->add_flag("--oracle", c.oracle, "Cross-check against the exhaustive oracle and report agreement");
  sub->add_flag("--degrees", c.degrees, "Also show angles in degrees (JSON stays in radians)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-min bottleneck subsets: convex polygons, polyhedra, closed curves, k-cores and bottleneck cycles"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "json";
  std::string objective = "maxmin";

  auto* polygon = app.add_subcommand("polygon2d", "Convex polygon with the largest minimum interior angle");
  polygon->add_option("input", c.input, "Point file, 2 columns")->required();
  polygon->add_flag("--include-straight", c.include_straight, "List collinear boundary points on the polygon");
  add_output(polygon, c, format);

  auto* polyhedron = app.add_subcommand("polyhedron3d", "Convex polyhedron with the largest minimum vertex solid angle");
  polyhedron->add_option("input", c.input, "Point file, 3 columns")->required();
  add_output(polyhedron, c, format);

  auto* curve = app.add_subcommand("curve3d", "Closed polygonal curve with the largest minimum turn angle");
  curve->add_option("input", c.input, "Point file, 3 columns")->required();
  curve->add_flag("--allow-repeated-segments", c.allow_repeated_segments, "Let the curve reuse a segment in the other direction");
  curve->add_flag("--allow-large", c.allow_large, "Lift the point-count guard");
  add_output(curve, c, format);

  auto* degen = app.add_subcommand("degeneracy", "Graph degeneracy and its maximal core");
  degen->add_option("input", c.input, "Undirected graph file")->required();
  add_output(degen, c, format);

  auto* cycle = app.add_subcommand("cycle", "Bottleneck cycle of a weighted graph");
  cycle->add_option("input", c.input, "Graph file")->required();
  cycle->add_option("--kind", c.kind, "Expected graph kind; must match the file header")
      ->check(CLI::IsMember({"undirected", "directed", "mixed", "polar"}));
  cycle->add_option("--objective", objective, "maxmin (widest) or minmax (narrowest)")
      ->check(CLI::IsMember({"maxmin", "minmax"}));
  add_output(cycle, c, format);

  auto* gen = app.add_subcommand("gen", "Write a seeded random instance");
  gen->add_option("--kind", c.kind, "points2, points3, simple, undirected, directed, mixed or polar")->required();
  gen->add_option("-n", c.gen_n, "Points or vertices");
  gen->add_option("-m", c.gen_m, "Edges");
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("-o,--output", c.output, "Write the instance here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return maxmin::cli::kParseError;
  }
  c.command = app.get_subcommands().front()->get_name();
  c.format = *maxmin::cli::parse_format(format);
  c.direction = objective == "minmax" ? maxmin::Direction::MinMax : maxmin::Direction::MaxMin;
  return maxmin::cli::run(c, std::cout, std::cerr);
}
