#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <apaver/figures.hpp>
#include <apaver/io.hpp>

using namespace apaver;
using nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE_MESSAGE(f.good(), "missing file: ", path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string golden(const std::string& name) {
  return slurp(std::string(APAVER_GOLDEN_DIR) + "/" + name);
}

int run_cli(const std::string& args) {
  std::string cmd = std::string(APAVER_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("classification table schemas") {
  ordered_json rows = io::classification_json(2, 1);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == ordered_json({{"s", 0}, {"t", 0}, {"triangle", 0}, {"type", 4}, {"region", "V"}}));
  for (const auto& r : rows) {
    CHECK(r.contains("type"));
    CHECK(triangle_index({r["s"], r["t"]}) == r["triangle"]);
  }

  std::string csv = io::classification_csv(1, 0);
  CHECK(csv ==
        "s,t,triangle,type,region\n"
        "0,0,0,0,V\n"
        "-1,-1,1,4,V\n"
        "0,1,1,12,V\n"
        "1,0,1,8,V\n");
}

TEST_CASE("cell table schemas") {
  ordered_json rows = io::cells_json(3, 2);
  REQUIRE(rows.size() == 19);
  for (const auto& r : rows) {
    Vertex v{r["s"], r["t"]};
    CellDescriptor d = cell(v, 2);
    CHECK(r["dimension"] == d.dimension);
    CHECK(r["level"] == d.level());
    CHECK(r["region"] == std::string(1, region_name(d.region)));
    for (Coord c : kAllCoords) {
      const CoordWindow& w = window_for(d.window_set, c);
      CHECK(r["windows"][std::string(1, coord_name(c))] == ordered_json({w.lo, w.hi}));
    }
  }

  std::string csv = io::cells_csv(1, 0);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "s,t,triangle,region,level,dim,i_lo,i_hi,j_lo,j_hi,k_lo,k_hi,x_lo,x_hi,y_lo,y_hi,z_lo,z_hi");
  CHECK(csv.find("\n0,0,0,V,0,0,") != std::string::npos);
}

TEST_CASE("dimension and polynomial tables") {
  CHECK(io::dims_csv(1, 0, 0) ==
        "rank,s,t,region,dim\n"
        "0,0,0,V,0\n"
        "1,0,1,V,0\n"
        "2,1,0,V,0\n"
        "3,-1,-1,V,0\n");

  ordered_json dims = io::dims_json(2, 1, 1);
  REQUIRE(dims.size() == 10);
  CHECK(dims[0] == ordered_json({{"rank", 0}, {"s", 0}, {"t", 0}, {"region", "V"}, {"dim", 0}}));

  ordered_json poly = io::poincare_json(2, 1, 1);
  CHECK(poly ==
        ordered_json({{"m", 1}, {"n", 1}, {"N", 2}, {"coeffs", {3, 2, 5}}}));
  CHECK(io::poincare_csv(1, 0, 0) == "dim,count\n0,4\n");
}

TEST_CASE("sweep order tables") {
  CHECK(io::order_csv(1, 0) ==
        "rank,s,t,triangle,stage,sort_key\n"
        "0,0,0,0,base,0\n"
        "1,0,1,1,iii,0\n"
        "2,1,0,1,iii,1\n"
        "3,-1,-1,1,iii,2\n");
  ordered_json rows = io::order_json(2, 1);
  REQUIRE(rows.size() == 10);
  for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i]["rank"] == i);
  CHECK(rows[1]["stage"] == "iii");  // ring 1 is all corners
  CHECK(rows[4]["stage"] == "i");    // ring 2 opens with its edge interior

}

TEST_CASE("form and report serialization") {
  PrimeField f(3);
  Vertex v{-1, 1};
  StandardForm M = make_zero_form(v, 1, windows(v, 1), f, 8);
  M.coord(Coord::i).set_coeff(0, 2);
  ordered_json j = io::to_json(M);
  CHECK(j["s"] == -1);
  CHECK(j["t"] == 1);
  CHECK(j["a"] == 1);
  CHECK(j["i"] == ordered_json::array({{0, 2}}));
  CHECK(j["z"] == ordered_json::array());

  oracle::VerificationReport rep = oracle::verify_uniqueness({0, 0}, 0, 2);
  ordered_json rj = io::to_json(rep);
  CHECK(rj["passed"] == true);
  CHECK(rj["scope"] == rep.scope);
  CHECK(rj["elapsed_seconds"].is_number());
  REQUIRE(rj["checks"].size() == 2);
  CHECK(rj["checks"][0].contains("expected"));
  CHECK(rj["checks"][0].contains("actual"));

  ordered_json agg = io::to_json(std::vector<oracle::VerificationReport>{rep, rep});
  CHECK(agg["passed"] == true);
  CHECK(agg["reports"].size() == 2);
}

TEST_CASE("renders are byte-deterministic") {
  CHECK(figures::render_types(5, 2) == figures::render_types(5, 2));
  CHECK(figures::render_triangles(4) == figures::render_triangles(4));
  CHECK(figures::render_movement(6, 2) == figures::render_movement(6, 2));
  CHECK(figures::render_order(4, 2) == figures::render_order(4, 2));
  CHECK(io::cells_json(3, 1).dump(2) == io::cells_json(3, 1).dump(2));
  CHECK(io::order_csv(5, 2) == io::order_csv(5, 2));
}

TEST_CASE("renders match the checked-in figures") {
  CHECK(figures::render_types(5, 0) == golden("types_N5_a0.svg"));
  CHECK(figures::render_types(5, 2) == golden("types_N5_a2.svg"));
  CHECK(figures::render_triangles(4) == golden("triangles_N4.svg"));
  CHECK(figures::render_movement(6, 2) == golden("movement_N6_a2.svg"));
  CHECK(figures::render_order(9, 4) == golden("order_N9_a4.svg"));
}

TEST_CASE("command line exit codes") {
  CHECK(run_cli("classify --N 2") == 0);
  CHECK(run_cli("figure --N 3 --kind triangles") == 0);
  CHECK(run_cli("") == 2);                          // subcommand required
  CHECK(run_cli("poincare --m 1 --n 0 --N 2") == 2);  // m > n
  CHECK(run_cli("order --N 2 --a -3") == 2);
  CHECK(run_cli("dims --N 2 --m 1 --n 2 --a 3") == 2);  // a contradicts n - m
  CHECK(run_cli("verify --suite bogus") == 2);
}

TEST_CASE("verify subcommand writes a parseable report") {
  std::string path = "/tmp/apaver_interfaces_verify.json";
  REQUIRE(run_cli("verify --suite springer --N 2 --m 1 --n 1 --q 3 --out " + path) == 0);
  ordered_json rep = ordered_json::parse(slurp(path));
  CHECK(rep["passed"] == true);
  REQUIRE(rep["reports"].size() == 1);
  CHECK(rep["reports"][0]["scope"].get<std::string>().find("m=1 n=1") != std::string::npos);
  std::remove(path.c_str());
}
