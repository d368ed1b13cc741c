#include "kpr/network.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kpr/errors.hpp"

namespace kpr {

namespace {

std::vector<std::string> sorted(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::string cname(int k) { return "C" + std::to_string(k); }

}  // namespace

int NetworkSpec::find(const std::vector<std::string>& reactants,
                      const std::vector<std::string>& products) const {
  const auto r = sorted(reactants);
  const auto p = sorted(products);
  for (std::size_t i = 0; i < reactions.size(); ++i) {
    if (sorted(reactions[i].reactants) == r && sorted(reactions[i].products) == p)
      return static_cast<int>(i);
  }
  return -1;
}

int NetworkSpec::find_reverse(int i) const {
  const auto& rx = reactions.at(static_cast<std::size_t>(i));
  return find(rx.products, rx.reactants);
}

int NetworkSpec::ladder_N() const {
  int n = -1;
  for (const auto& s : species) {
    if (s.size() > 1 && s[0] == 'C') {
      int k = std::stoi(s.substr(1));
      n = std::max(n, k);
    }
  }
  return n;
}

NetworkSpec build_ladder(const ModelParams& params) {
  params.validate();
  const int N = params.N;
  const double E = params.energy_E;
  const double mu = params.mu();

  NetworkSpec net;
  net.species.push_back("S");
  for (int k = 0; k <= N; ++k) net.species.push_back(cname(k));
  net.species.push_back("out");
  net.species.push_back("deg");

  for (int k = 0; k <= N; ++k)
    net.reactions.push_back({{"S"}, {cname(k)}, std::exp(-k * E)});
  for (int k = 0; k <= N; ++k)
    net.reactions.push_back({{cname(k)}, {"S"}, std::exp(params.sigma)});
  for (int k = 0; k < N; ++k)
    net.reactions.push_back(
        {{cname(k)}, {cname(k + 1)}, params.alpha * std::exp(params.delta)});
  for (int k = 1; k <= N; ++k)
    net.reactions.push_back(
        {{cname(k)}, {cname(k - 1)}, params.alpha * std::exp(E)});
  net.reactions.push_back({{cname(N)}, {"out"}, params.alpha * std::exp(params.delta)});
  if (params.has_degradation()) {
    net.reactions.push_back({{"S"}, {"deg"}, mu});
    for (int k = 0; k <= N; ++k)
      net.reactions.push_back({{cname(k)}, {"deg"}, mu});
  }
  return net;
}

double cycle_delta_path(const NetworkSpec& net, std::span<const int> path) {
  double acc = 0.0;
  for (int i : path) {
    if (i < 0 || i >= static_cast<int>(net.reactions.size()))
      throw structure_error("cycle_delta_path: reaction index out of range");
    const int j = net.find_reverse(i);
    if (j < 0)
      throw structure_error("cycle_delta_path: missing reverse reaction");
    acc += std::log(net.reactions[static_cast<std::size_t>(i)].rate) -
           std::log(net.reactions[static_cast<std::size_t>(j)].rate);
  }
  return acc;
}

double cycle_delta(const NetworkSpec& net, int k) {
  const int N = net.ladder_N();
  if (k < 0 || k >= N)
    throw structure_error("cycle_delta: cycle index outside 0..N-1");
  const int attach = net.find({"S"}, {cname(k)});
  const int phos = net.find({cname(k)}, {cname(k + 1)});
  const int detach_up = net.find({cname(k + 1)}, {"S"});
  if (attach < 0 || phos < 0 || detach_up < 0)
    throw structure_error("cycle_delta: cycle reactions missing");
  const int path[] = {attach, phos, detach_up};
  return cycle_delta_path(net, path);
}

std::pair<bool, std::vector<CycleReport>> wegscheider_holds(const NetworkSpec& net,
                                                            double tol) {
  std::vector<CycleReport> reports;
  const bool enlarged =
      std::find(net.species.begin(), net.species.end(), "ATP") != net.species.end();
  const int N = net.ladder_N();
  for (int k = 0; k + 1 <= N; ++k) {
    double d;
    if (enlarged) {
      const int r1 = net.find({cname(k), "ATP"}, {cname(k + 1), "ADP"});
      const int r2rev = net.find({"ADP", "P"}, {"ATP"});
      std::vector<std::string> up_prod = {"S"};
      for (int j = 0; j <= k; ++j) up_prod.push_back("P");
      const int r3up = net.find({cname(k + 1)}, up_prod);
      std::vector<std::string> down_react = {"S"};
      for (int j = 0; j < k; ++j) down_react.push_back("P");
      const int r3down_rev = net.find(down_react, {cname(k)});
      if (r1 < 0 || r2rev < 0 || r3up < 0 || r3down_rev < 0)
        throw structure_error("wegscheider_holds: enlarged cycle reactions missing");
      const int path[] = {r1, r2rev, r3up, r3down_rev};
      d = cycle_delta_path(net, path);
    } else {
      d = cycle_delta(net, k);
    }
    reports.push_back({k, d, std::abs(d) <= tol});
  }
  bool all = true;
  for (const auto& r : reports) all = all && r.balanced;
  return {all, reports};
}

std::string to_text(const NetworkSpec& net) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& rx : net.reactions) {
    for (std::size_t i = 0; i < rx.reactants.size(); ++i)
      os << (i ? " + " : "") << rx.reactants[i];
    os << " -> ";
    for (std::size_t i = 0; i < rx.products.size(); ++i)
      os << (i ? " + " : "") << rx.products[i];
    os << " @ " << rx.rate << "\n";
  }
  return os.str();
}

}  // namespace kpr
