#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

const fs::path kWorkDir = fs::temp_directory_path() / "lrb_cli_tests";

int run_cli(const std::string& args) {
  const std::string cmd =
      std::string(LRB_CLI_PATH) + " " + args + " 2> /dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct WorkDir {
  WorkDir() {
    fs::remove_all(kWorkDir);
    fs::create_directories(kWorkDir);
  }
};
const WorkDir kSetup;

}  // namespace

TEST_CASE("derive subcommand") {
  const fs::path out = kWorkDir / "bound.json";

  SUBCASE("valid run writes the descriptor") {
    CHECK(run_cli("derive --alpha 2 --dim 1 --sigma 0.9 --iterations 5 --out " +
                  out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["iteration_count"] == 5);
    CHECK(j["cutoff"].is_null());
    double max_mu = -1e9;
    for (const auto& t : j["poly_terms"])
      max_mu = std::max(max_mu, t["r_exponent"].get<double>());
    CHECK(max_mu == doctest::Approx(-1.8).epsilon(1e-12));
  }

  SUBCASE("sigma below the proven floor is rejected") {
    CHECK(run_cli("derive --alpha 2 --dim 1 --sigma 0.5 --iterations 3") == 2);
  }

  SUBCASE("loose sigma needs the override flag") {
    // 0.6 < 2/3 but still has sigma * alpha > d.
    CHECK(run_cli("derive --alpha 2 --dim 1 --sigma 0.6 --iterations 2") == 2);
    CHECK(run_cli("derive --alpha 2 --dim 1 --sigma 0.6 --iterations 2 "
                  "--allow-loose-sigma --out " +
                  (kWorkDir / "loose.json").string()) == 0);
  }

  SUBCASE("alpha must exceed dim") {
    CHECK(run_cli("derive --alpha 1.5 --dim 2 --sigma 0.9 --iterations 2") ==
          2);
  }

  SUBCASE("zero iterations emits the seed bound") {
    const fs::path seed = kWorkDir / "seed.json";
    CHECK(run_cli("derive --alpha 2 --iterations 0 --cutoff 3 --out " +
                  seed.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(seed));
    CHECK(j["seed_exponential"] == true);
    CHECK(j["cutoff"] == 3.0);
    CHECK(j["poly_terms"].empty());
  }

  SUBCASE("determinism: identical runs are byte-identical") {
    const fs::path a = kWorkDir / "det_a.json";
    const fs::path b = kWorkDir / "det_b.json";
    const std::string flags = "derive --alpha 3 --sigma 0.85 --iterations 4";
    CHECK(run_cli(flags + " --out " + a.string()) == 0);
    CHECK(run_cli(flags + " --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("lightcone subcommand") {
  SUBCASE("LC2 curve CSV") {
    const fs::path out = kWorkDir / "lc2.csv";
    CHECK(run_cli("lightcone --dim 1 --alpha-min 1.5 --alpha-max 8 "
                  "--steps 27 --which lc2 --out " +
                  out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("alpha,this_work,foss_feig,matsuta\n", 0) == 0);
    // alpha = 4 sits on the grid; matsuta column reads 3 there.
    CHECK(csv.find("\n4,3,") != std::string::npos);
  }

  SUBCASE("LC1 columns are identical") {
    const fs::path out = kWorkDir / "lc1.csv";
    CHECK(run_cli("lightcone --dim 1 --alpha-min 2 --alpha-max 4 --steps 3 "
                  "--which lc1 --out " +
                  out.string()) == 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      const auto c1 = line.find(',');
      const auto c2 = line.find(',', c1 + 1);
      const auto c3 = line.find(',', c2 + 1);
      const std::string a = line.substr(c1 + 1, c2 - c1 - 1);
      const std::string b = line.substr(c2 + 1, c3 - c2 - 1);
      const std::string c = line.substr(c3 + 1);
      CHECK(a == b);
      CHECK(b == c);
    }
  }

  SUBCASE("JSON variant carries explicit nulls") {
    const fs::path out = kWorkDir / "lc2.json";
    CHECK(run_cli("lightcone --dim 1 --alpha-min 1.5 --alpha-max 2 --steps 2 "
                  "--which lc2 --format json --out " +
                  out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j[0]["matsuta"].is_null());
    CHECK(j[1]["matsuta"].is_null());  // alpha = 2 = 2d still has no cone
  }

  SUBCASE("grid validation") {
    CHECK(run_cli("lightcone --dim 1 --alpha-min 0.5 --alpha-max 8") == 2);
    CHECK(run_cli("lightcone --dim 2 --alpha-min 2 --alpha-max 8") == 2);
  }

  SUBCASE("single-method column") {
    const fs::path out = kWorkDir / "ff.csv";
    CHECK(run_cli("lightcone --dim 1 --alpha-min 2 --alpha-max 2.5 --steps 2 "
                  "--which lc2 --method foss_feig --out " +
                  out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("alpha,foss_feig\n", 0) == 0);
    CHECK(csv.find("\n2,5\n") != std::string::npos);
  }
}

TEST_CASE("verify subcommand") {
  SUBCASE("small chain report") {
    const fs::path out = kWorkDir / "verify.json";
    const fs::path front = kWorkDir / "front.csv";
    CHECK(run_cli("verify --sites 4 --alpha 2 --tmax 1 --steps 4 --out " +
                  out.string() + " --front-out " + front.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["invariants"]["unitarity"] == true);
    CHECK(j["invariants"]["zero_at_t0"] == true);
    CHECK(j["kappa"].get<double>() >= 0.0);
    CHECK(std::isfinite(j["kappa"].get<double>()));
    CHECK(slurp(front).rfind("r,t,value\n", 0) == 0);
    const nlohmann::json meta =
        nlohmann::json::parse(slurp(front.string() + ".meta.json"));
    CHECK(meta["sites"] == 4);
  }

  SUBCASE("site cap") {
    CHECK(run_cli("verify --sites 20 --alpha 2 --tmax 1 --steps 2") == 2);
  }

  SUBCASE("externally supplied bound file") {
    const fs::path bound = kWorkDir / "ext_bound.json";
    REQUIRE(run_cli("derive --alpha 2 --sigma 0.8 --iterations 4 --out " +
                    bound.string()) == 0);
    const fs::path out = kWorkDir / "verify_ext.json";
    CHECK(run_cli("verify --sites 4 --alpha 2 --tmax 1 --steps 2 "
                  "--bound-file " +
                  bound.string() + " --out " + out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    CHECK(j["bound"]["iteration_count"] == 4);
  }
}

TEST_CASE("perturb subcommand") {
  SUBCASE("rows satisfy the Duhamel inequality") {
    const fs::path out = kWorkDir / "perturb.json";
    CHECK(run_cli("perturb --sites 5 --alpha 2 --delta 0.4 --rmin 2 "
                  "--tmax 2 --steps 4 --out " +
                  out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    REQUIRE(j["rows"].size() == 4);
    for (const auto& row : j["rows"]) {
      CHECK(row["lhs"].get<double>() <=
            row["duhamel_rhs"].get<double>() + 1e-9);
      CHECK(row["lhs"].get<double>() <=
            row["bound_integral_rhs"].get<double>() + 1e-9);
    }
    CHECK(std::isfinite(j["fitted_constant"].get<double>()));
  }

  SUBCASE("halving the perturbation halves the small-t difference") {
    const fs::path full = kWorkDir / "p_full.json";
    const fs::path half = kWorkDir / "p_half.json";
    const std::string base =
        "perturb --sites 5 --alpha 2 --delta 0.4 --rmin 2 --tmax 0.1 "
        "--steps 1 --out ";
    CHECK(run_cli(base + full.string()) == 0);
    CHECK(run_cli(base + half.string() + " --scale 0.5") == 0);
    const double lf = nlohmann::json::parse(slurp(full))["rows"][0]["lhs"];
    const double lh = nlohmann::json::parse(slurp(half))["rows"][0]["lhs"];
    REQUIRE(lf > 0.0);
    CHECK(lh / lf == doctest::Approx(0.5).epsilon(0.1));
  }

  SUBCASE("exclusion ball past the lattice leaves all rows zero") {
    const fs::path out = kWorkDir / "p_empty.json";
    CHECK(run_cli("perturb --sites 5 --alpha 2 --delta 0.4 --rmin 50 "
                  "--tmax 1 --steps 3 --out " +
                  out.string()) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out));
    for (const auto& row : j["rows"])
      CHECK(row["lhs"].get<double>() < 1e-12);
  }

  SUBCASE("perturbation inside the exclusion ball is rejected") {
    CHECK(run_cli("perturb --sites 5 --alpha 2 --delta 0.4 --site 1 "
                  "--rmin 3 --tmax 1 --steps 2") == 2);
  }
}

TEST_CASE("lemmas subcommand") {
  SUBCASE("incomplete gamma constant at (0, 1)") {
    const fs::path out = kWorkDir / "gamma.csv";
    CHECK(run_cli("lemmas --check gamma --mu 0 --nu 1 --rho-max 10 "
                  "--points 10 --out " +
                  out.string()) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("mu,nu,rho_max,C\n", 0) == 0);
    // Integral is e^{-rho}, envelope 2 e^{-rho}: the constant is 1/2.
    const auto nl = csv.find('\n');
    const std::string row = csv.substr(nl + 1);
    const double c = std::stod(row.substr(row.rfind(',') + 1));
    CHECK(c == doctest::Approx(0.5).epsilon(1e-9));
  }

  SUBCASE("sum versus integral") {
    const fs::path out = kWorkDir / "sum.csv";
    CHECK(run_cli("lemmas --check sum --length 51 --dim 1 --exponent 3 "
                  "--radius 25 --out " +
                  out.string()) == 0);
    CHECK(slurp(out).rfind("dim,length,exponent,R,C\n", 0) == 0);
  }

  SUBCASE("bad check name") {
    CHECK(run_cli("lemmas --check bogus") == 2);
  }
}
