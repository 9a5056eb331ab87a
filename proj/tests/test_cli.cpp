#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run
{
  int code;
  std::string out;
};

Run run(const std::string& args)
{
  const std::string cmd = std::string(MONOLAB_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    out.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

} // namespace

TEST_SUITE("cli")
{
  TEST_CASE("apply")
  {
    Run r = run("apply --e 1,0 --op Ae --x 1,1");
    CHECK(r.code == 0);
    CHECK(r.out == "{\"kind\":\"singleton\",\"v\":[-1.0,1.0]}\n");

    r = run("apply --e 1,0 --op Ae --x 0,0");
    CHECK(r.out == "{\"kind\":\"ray\",\"direction\":[-1.0,0.0]}\n");

    r = run("apply --e 0.5,0 --op Te --x 0,2");
    CHECK(parse(r) == nlohmann::json::parse("[0.5,1.0]"));

    r = run("apply --e 1,0 --op Ae --x=-1,1");
    CHECK(parse(r)["kind"] == "empty");
  }

  TEST_CASE("exit codes")
  {
    CHECK(run("apply --e 1,0 --op Ae --x 1,1,1").code == 3);
    CHECK(run("apply --e 1,zero --op Ae --x 1,1").code == 2);
    CHECK(run("apply --e 2,0 --op Re --x 1,1").code == 2);
    CHECK(run("apply --op Re --x 1,1").code == 2);
    CHECK(run("certify --e 1,0 --property strong").code == 4);
    CHECK(run("average --dirs \"1,0;0,1\" --weights 0.5,0.6").code == 2);
  }

  TEST_CASE("iterate")
  {
    Run r = run("iterate --e 1,0 --x0 0,1 --max-iter 200 --out /dev/null");
    CHECK(r.code == 0);
    nlohmann::json s = parse(r);
    CHECK(s["predicted_limit"][0].get<double>() == doctest::Approx(2.0 / 3.141592653589793));
    CHECK(s["limit_error"].get<double>() <= 1e-8);

    r = run("iterate --e 0.5,0 --x0 0,1 --out /dev/null");
    s = parse(r);
    CHECK(s["estimated_rate"].get<double>() == doctest::Approx(0.75).epsilon(1e-6));

    r = run("iterate --e 0,0 --x0 8,0 --max-iter 3 --format csv");
    CHECK(r.out.find("0,8;0,8,,0.5\n1,4;0,4,,0.5\n2,2;0,2,,0.5\n3,1;0,1,,") != std::string::npos);
  }

  TEST_CASE("certify")
  {
    Run r = run("certify --e-norm 0.5 --seed 7 --dim 3 --property strong --samples 2000");
    CHECK(r.code == 0);
    nlohmann::json c = parse(r);
    CHECK(c["verdict"] == "pass");
    CHECK(c["claimed"].get<double>() == doctest::Approx(1.0 / 3.0));

    r = run("certify --e 1,0 --property three-star --alpha 1");
    CHECK(r.code == 0);
    c = parse(r);
    CHECK(c["verdict"] == "witness-found");
    CHECK(c["estimate"].get<double>() == doctest::Approx(-0.5857864376269049));

    r = run("certify --e-norm 0.5 --dim 2 --property displacement");
    CHECK(r.code == 0);
    CHECK(parse(r)["verdict"] == "fail");

    CHECK(run("certify --e 1 --property one-dim-cone").code == 0);
    CHECK(run("certify --e 1,0 --property paramonotone").code == 0);
  }

  TEST_CASE("certify output is deterministic")
  {
    const std::string args = "certify --e-norm 0.7 --seed 5 --dim 4 --property monotone --samples 500";
    CHECK(run(args).out == run(args).out);
  }

  TEST_CASE("average")
  {
    Run r = run("average --dirs \"1,0;-1,0\" --weights 0.5,0.5");
    CHECK(r.code == 0);
    nlohmann::json a = parse(r);
    CHECK(a["e_bar"] == nlohmann::json::parse("[0.0,0.0]"));

    r = run("average --dirs \"1,0;0,1\" --weights 0.5,0.5");
    a = parse(r);
    CHECK(a["e_bar"] == nlohmann::json::parse("[0.5,0.5]"));
    CHECK(a["max_deviation"].get<double>() <= 1e-12);
  }
}
