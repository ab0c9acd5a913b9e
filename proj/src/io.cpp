#include "rosenblatt/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace rosenblatt {

namespace {

std::vector<double> parse_csv_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw std::invalid_argument("parse_domain: empty number in '" + s + "'");
    out.push_back(std::stod(tok));
  }
  return out;
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  Eigen::VectorXd x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x(i) = v[i];
  return x;
}

Ball parse_ball_term(const std::string& term) {
  const auto at = term.find('@');
  const double R = std::stod(term.substr(0, at));
  Eigen::VectorXd c;
  if (at == std::string::npos) {
    c = Eigen::VectorXd::Zero(2);  // dimension fixed up by caller when needed
  } else {
    c = to_vec(parse_csv_doubles(term.substr(at + 1)));
  }
  return Ball{c, R};
}

}  // namespace

Domain parse_domain(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("parse_domain: expected 'type:params', got '" + text + "'");
  const std::string type = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);

  if (type == "interval") {
    const auto v = parse_csv_doubles(rest);
    if (v.size() != 2) throw std::invalid_argument("parse_domain: interval needs a,b");
    return Domain(Interval{v[0], v[1]});
  }
  if (type == "box") {
    const auto v = parse_csv_doubles(rest);
    return Domain(Box{to_vec(v)});
  }
  if (type == "ball") {
    const auto at = rest.find('@');
    const double R = std::stod(rest.substr(0, at));
    if (at == std::string::npos) return Domain(Ball{Eigen::VectorXd::Zero(2), R});
    return Domain(Ball{to_vec(parse_csv_doubles(rest.substr(at + 1))), R});
  }
  if (type == "ball1d") {
    const auto at = rest.find('@');
    const double R = std::stod(rest.substr(0, at));
    Eigen::VectorXd c = Eigen::VectorXd::Zero(1);
    if (at != std::string::npos) c(0) = std::stod(rest.substr(at + 1));
    return Domain(Ball{c, R});
  }
  if (type == "union") {
    UnionOfBalls u;
    std::stringstream ss(rest);
    std::string term;
    while (std::getline(ss, term, ';'))
      if (!term.empty()) u.balls.push_back(parse_ball_term(term));
    return Domain(std::move(u));
  }
  if (type == "annulus") {
    const auto at = rest.find('@');
    const auto radii = parse_csv_doubles(rest.substr(0, at));
    if (radii.size() != 2) throw std::invalid_argument("parse_domain: annulus needs Rin,Rout");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
    if (at != std::string::npos) c = to_vec(parse_csv_doubles(rest.substr(at + 1)));
    return Domain(Annulus{c, radii[0], radii[1]});
  }
  throw std::invalid_argument("parse_domain: unknown domain type '" + type + "'");
}

std::string format_domain(const Domain& D) {
  std::ostringstream os;
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Interval>)
          os << "interval:" << format_double(g.a) << "," << format_double(g.b);
        if constexpr (std::is_same_v<T, Box>) {
          os << "box:";
          for (int i = 0; i < g.sides.size(); ++i)
            os << (i ? "," : "") << format_double(g.sides(i));
        }
        if constexpr (std::is_same_v<T, Ball>) {
          os << (g.center.size() == 1 ? "ball1d:" : "ball:") << format_double(g.radius) << "@";
          for (int i = 0; i < g.center.size(); ++i)
            os << (i ? "," : "") << format_double(g.center(i));
        }
        if constexpr (std::is_same_v<T, UnionOfBalls>) {
          os << "union:";
          for (std::size_t b = 0; b < g.balls.size(); ++b) {
            os << (b ? ";" : "") << format_double(g.balls[b].radius) << "@";
            for (int i = 0; i < g.balls[b].center.size(); ++i)
              os << (i ? "," : "") << format_double(g.balls[b].center(i));
          }
        }
        if constexpr (std::is_same_v<T, Annulus>) {
          os << "annulus:" << format_double(g.r_inner) << "," << format_double(g.r_outer) << "@";
          for (int i = 0; i < g.center.size(); ++i)
            os << (i ? "," : "") << format_double(g.center(i));
        }
      },
      D.value());
  return os.str();
}

nlohmann::json domain_to_json(const Domain& D) {
  nlohmann::json j;
  j["dim"] = D.dim();
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Interval>) {
          j["type"] = "interval";
          j["a"] = g.a;
          j["b"] = g.b;
        }
        if constexpr (std::is_same_v<T, Box>) {
          j["type"] = "box";
          j["sides"] = std::vector<double>(g.sides.data(), g.sides.data() + g.sides.size());
        }
        if constexpr (std::is_same_v<T, Ball>) {
          j["type"] = "ball";
          j["radius"] = g.radius;
          j["center"] = std::vector<double>(g.center.data(), g.center.data() + g.center.size());
        }
        if constexpr (std::is_same_v<T, UnionOfBalls>) {
          j["type"] = "union_of_balls";
          auto arr = nlohmann::json::array();
          for (const auto& b : g.balls)
            arr.push_back({{"radius", b.radius},
                           {"center", std::vector<double>(b.center.data(),
                                                          b.center.data() + b.center.size())}});
          j["balls"] = arr;
        }
        if constexpr (std::is_same_v<T, Annulus>) {
          j["type"] = "annulus";
          j["r_inner"] = g.r_inner;
          j["r_outer"] = g.r_outer;
          j["center"] = std::vector<double>(g.center.data(), g.center.data() + g.center.size());
        }
      },
      D.value());
  return j;
}

Domain domain_from_json(const nlohmann::json& j) {
  const std::string type = j.at("type");
  if (type == "interval") return Domain(Interval{j.at("a"), j.at("b")});
  if (type == "box") {
    const std::vector<double> s = j.at("sides");
    return Domain(Box{to_vec(s)});
  }
  if (type == "ball") {
    const std::vector<double> c = j.at("center");
    return Domain(Ball{to_vec(c), j.at("radius")});
  }
  if (type == "union_of_balls") {
    UnionOfBalls u;
    for (const auto& b : j.at("balls")) {
      const std::vector<double> c = b.at("center");
      u.balls.push_back(Ball{to_vec(c), b.at("radius")});
    }
    return Domain(std::move(u));
  }
  if (type == "annulus") {
    const std::vector<double> c = j.at("center");
    return Domain(Annulus{to_vec(c), j.at("r_inner"), j.at("r_outer")});
  }
  throw std::invalid_argument("domain_from_json: unknown type '" + type + "'");
}

nlohmann::json spec_to_json(const RosenblattSpec& spec) {
  nlohmann::json j;
  j["d"] = spec.d;
  j["alpha"] = spec.alpha;
  j["domain"] = spec.domain_desc;
  j["lambdas"] =
      std::vector<double>(spec.lambdas.data(), spec.lambdas.data() + spec.lambdas.size());
  j["tail_var"] = spec.tail_var;
  j["trace_sq"] = spec.trace_sq;
  return j;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fnv1a64_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a64_file: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

}  // namespace rosenblatt
