#include "forma/report.hpp"

#include <sstream>

namespace forma {

void CheckItem::fail(Witness w) {
  pass = false;
  if (static_cast<int>(witnesses.size()) < kMaxWitnessesPerItem) {
    witnesses.push_back(std::move(w));
  }
}

void CheckItem::info(Witness w) {
  if (static_cast<int>(witnesses.size()) < kMaxWitnessesPerItem) {
    witnesses.push_back(std::move(w));
  }
}

CheckItem& CheckReport::item(const std::string& name) {
  for (auto& it : items) {
    if (it.name == name) return it;
  }
  items.push_back(CheckItem{name, true, {}});
  return items.back();
}

const CheckItem* CheckReport::find(const std::string& name) const {
  for (const auto& it : items) {
    if (it.name == name) return &it;
  }
  return nullptr;
}

bool CheckReport::item_passed(const std::string& name) const {
  const CheckItem* it = find(name);
  return it != nullptr && it->pass;
}

void CheckReport::merge(const CheckReport& other) {
  for (const auto& it : other.items) {
    CheckItem& mine = item(it.name);
    if (!it.pass) {
      mine.pass = false;
      for (const auto& w : it.witnesses) {
        if (static_cast<int>(mine.witnesses.size()) < kMaxWitnessesPerItem) {
          mine.witnesses.push_back(w);
        }
      }
    }
  }
  for (const auto& n : other.notes) notes.push_back(n);
  recompute_verdict();
}

void CheckReport::recompute_verdict() {
  pass = true;
  for (const auto& it : items) {
    if (!it.pass) pass = false;
  }
}

std::string CheckReport::summary() const {
  std::ostringstream os;
  os << (pass ? "pass" : "fail");
  for (const auto& it : items) {
    if (!it.pass) {
      os << " [" << it.name;
      if (!it.witnesses.empty()) os << ": " << it.witnesses.front().detail;
      os << "]";
    }
  }
  return os.str();
}

}  // namespace forma
