#include "haken/verify.hpp"

#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace haken {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t x, std::size_t y) { parent_[find(x)] = find(y); }

 private:
  std::vector<std::size_t> parent_;
};

void check_blocks(const Plan& plan, VerificationReport& report) {
  report.blocks_ok = true;
  std::set<std::string> ids;
  for (const auto& block : plan.blocks) {
    auto fail = [&](const std::string& what) {
      report.blocks_ok = false;
      report.diagnostics.push_back("block '" + block.id + "': " + what);
    };
    if (!ids.insert(block.id).second) fail("duplicate block id");
    std::set<std::string> slot_ids;
    for (const auto& s : block.slots) {
      if (!slot_ids.insert(s.id).second) fail("duplicate slot id '" + s.id + "'");
    }
    if (const auto* sub = std::get_if<SubPlanRefParams>(&block.params); sub && sub->plan) {
      const VerificationReport nested = verify(*sub->plan);
      if (nested.status == Status::Fail) {
        fail("nested plan fails verification");
        for (const auto& d : nested.diagnostics) report.diagnostics.push_back("  " + block.id + ": " + d);
        continue;
      }
      report.necessary_only += nested.necessary_only;
    }
    std::vector<BoundarySlot> expected;
    try {
      expected = expected_slots(block.params);
    } catch (const Error& e) {
      fail(std::string("invalid parameters: ") + e.what());
      continue;
    }
    if (expected.size() != block.slots.size()) {
      fail("expected " + std::to_string(expected.size()) + " slots for kind " + kind_name(block.params) + ", found " +
           std::to_string(block.slots.size()));
      continue;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const auto& have = block.slots[i];
      const auto& want = expected[i];
      if (have.id != want.id) {
        fail("slot " + std::to_string(i) + " is '" + have.id + "', kind " + kind_name(block.params) + " requires '" +
             want.id + "'");
      } else if (!(have.label == want.label)) {
        fail("monodromy mismatch on slot '" + have.id + "': recorded " + to_string(have.label) + ", parameters give " +
             to_string(want.label));
      }
    }
  }
}

void check_gluings(const Plan& plan, VerificationReport& report) {
  for (std::size_t i = 0; i < plan.gluings.size(); ++i) {
    const Gluing& g = plan.gluings[i];
    GluingCheck check;
    check.index = i;
    const BoundarySlot* a = plan.slot(g.a);
    const BoundarySlot* b = plan.slot(g.b);
    if (!a || !b) {
      check.diagnostic = "unknown slot " + to_string(a ? g.b : g.a);
    } else {
      const GlueResult r = match_gluing(*a, *b, g.witness);
      check.accepted = r.accepted;
      check.tier = r.tier;
      check.diagnostic = r.diagnostic;
      if (r.accepted && r.tier == WitnessTier::NecessaryOnly) ++report.necessary_only;
    }
    if (!check.accepted) {
      report.diagnostics.push_back("gluing " + std::to_string(i) + " (" + to_string(g.a) + " -- " + to_string(g.b) +
                                   "): " + check.diagnostic);
    }
    report.gluings.push_back(std::move(check));
  }
}

void check_accounting(const Plan& plan, VerificationReport& report) {
  report.slots_ok = true;
  std::map<SlotRef, int> uses;
  for (const auto& block : plan.blocks) {
    for (const auto& s : block.slots) uses[{block.id, s.id}] = 0;
  }
  auto use = [&](const SlotRef& ref, const char* where) {
    auto it = uses.find(ref);
    if (it == uses.end()) {
      report.slots_ok = false;
      report.diagnostics.push_back(std::string(where) + " names unknown slot " + to_string(ref));
      return;
    }
    ++it->second;
  };
  for (const auto& g : plan.gluings) {
    use(g.a, "gluing");
    use(g.b, "gluing");
  }
  for (const auto& r : plan.residual) use(r, "residual");
  for (const auto& [ref, n] : uses) {
    if (n == 1) continue;
    report.slots_ok = false;
    report.diagnostics.push_back("slot " + to_string(ref) + (n == 0 ? " is dangling" : " is used " + std::to_string(n) + " times"));
  }
}

void check_connectivity(const Plan& plan, VerificationReport& report) {
  if (plan.blocks.empty()) {
    report.connected = false;
    report.diagnostics.push_back("plan has no blocks");
    return;
  }
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) index.emplace(plan.blocks[i].id, i);
  DisjointSets sets(plan.blocks.size());
  for (const auto& g : plan.gluings) {
    auto a = index.find(g.a.block);
    auto b = index.find(g.b.block);
    if (a != index.end() && b != index.end()) sets.unite(a->second, b->second);
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < plan.blocks.size(); ++i) roots.insert(sets.find(i));
  report.connected = roots.size() == 1;
  if (!report.connected) {
    report.diagnostics.push_back("gluing graph is disconnected (" + std::to_string(roots.size()) + " components)");
  }
}

void check_residual(const Plan& plan, VerificationReport& report) {
  report.residual_ok = true;
  auto fail = [&](const std::string& what) {
    report.residual_ok = false;
    report.diagnostics.push_back("residual: " + what);
  };
  for (const auto& [ref, w] : plan.relabel) {
    if (std::find(plan.residual.begin(), plan.residual.end(), ref) == plan.residual.end()) {
      fail("relabel witness on non-residual slot " + to_string(ref));
    }
  }
  if (plan.residual.size() != plan.target.size()) {
    fail(std::to_string(plan.residual.size()) + " residual slots but " + std::to_string(plan.target.size()) +
         " target labels");
    return;
  }
  for (const auto& r : plan.residual) {
    if (!plan.slot(r)) {
      fail("unknown slot " + to_string(r));
      return;
    }
  }
  const auto assignment = match_residual(plan);
  if (assignment.size() != plan.residual.size()) {
    std::string have, want;
    for (const auto& r : plan.residual) have += (have.empty() ? "" : ", ") + to_string(plan.slot(r)->label);
    for (const auto& t : plan.target) want += (want.empty() ? "" : ", ") + to_string(t);
    fail("labels {" + have + "} do not match target {" + want + "} under the relabel witnesses");
    return;
  }
  for (std::size_t i = 0; i < plan.residual.size(); ++i) {
    auto rw = plan.relabel.find(plan.residual[i]);
    if (rw == plan.relabel.end()) continue;
    const GlueResult r = check_relabel(plan.slot(plan.residual[i])->label, plan.target[assignment[i]], rw->second);
    if (r.tier == WitnessTier::NecessaryOnly) ++report.necessary_only;
  }
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::PassNecessaryOnly: return "pass-necessary-only";
    default: return "fail";
  }
}

VerificationReport verify(const Plan& plan) {
  VerificationReport report;
  check_blocks(plan, report);
  check_gluings(plan, report);
  check_accounting(plan, report);
  check_connectivity(plan, report);
  check_residual(plan, report);
  const bool gluings_ok =
      std::all_of(report.gluings.begin(), report.gluings.end(), [](const GluingCheck& g) { return g.accepted; });
  if (!report.blocks_ok || !gluings_ok || !report.slots_ok || !report.connected || !report.residual_ok) {
    report.status = Status::Fail;
  } else {
    report.status = report.necessary_only > 0 ? Status::PassNecessaryOnly : Status::Pass;
  }
  return report;
}

std::string VerificationReport::str(const Plan& plan) const {
  std::ostringstream out;
  out << "status: " << to_string(status) << "\n";
  out << "blocks: " << plan.blocks.size() << " (" << plan.flat_block_count() << " flattened), "
      << (blocks_ok ? "slot formulas ok" : "slot formulas FAILED") << "\n";
  out << "gluings: " << gluings.size() << "\n";
  for (const auto& g : gluings) {
    const Gluing& gl = plan.gluings[g.index];
    out << "  [" << g.index << "] " << to_string(gl.a) << " -- " << to_string(gl.b) << " " << kind_name(gl.witness)
        << ": ";
    if (!g.accepted) {
      out << "FAIL " << g.diagnostic;
    } else {
      out << (g.tier == WitnessTier::Exact ? "ok" : "ok (necessary only)");
    }
    out << "\n";
  }
  out << "slot accounting: " << (slots_ok ? "ok" : "FAILED") << "\n";
  out << "connectivity: " << (connected ? "ok" : "FAILED") << "\n";
  out << "residual: " << (residual_ok ? "ok" : "FAILED");
  for (std::size_t i = 0; i < plan.residual.size() && i < plan.target.size(); ++i) {
    out << (i ? ", " : " ") << to_string(plan.residual[i]) << " -> " << to_string(plan.target[i]);
  }
  out << "\n";
  out << "necessary-only witnesses: " << necessary_only << "\n";
  for (const auto& d : diagnostics) out << "diagnostic: " << d << "\n";
  return out.str();
}

}  // namespace haken
