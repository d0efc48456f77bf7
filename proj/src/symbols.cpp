#include "ringforge/pddl.hpp"

#include <deque>
#include <mutex>
#include <shared_mutex>

namespace ringforge::pddl {

namespace {

struct InternTable {
    std::shared_mutex mutex;
    std::deque<std::string> texts;  // deque: growth never moves stored strings
    std::unordered_map<std::string_view, std::uint32_t> ids;
};

InternTable& table() {
    static InternTable* t = new InternTable();
    return *t;
}

}  // namespace

Symbol Symbol::intern(std::string_view text) {
    auto& t = table();
    {
        std::shared_lock lock(t.mutex);
        auto it = t.ids.find(text);
        if (it != t.ids.end()) return Symbol(it->second);
    }
    std::unique_lock lock(t.mutex);
    auto it = t.ids.find(text);
    if (it != t.ids.end()) return Symbol(it->second);
    auto id = static_cast<std::uint32_t>(t.texts.size());
    t.texts.emplace_back(text);
    t.ids.emplace(std::string_view(t.texts.back()), id);
    return Symbol(id);
}

std::optional<Symbol> Symbol::lookup(std::string_view text) {
    auto& t = table();
    std::shared_lock lock(t.mutex);
    auto it = t.ids.find(text);
    if (it == t.ids.end()) return std::nullopt;
    return Symbol(it->second);
}

const std::string& Symbol::text() const {
    static const std::string invalid = "<invalid>";
    if (!valid()) return invalid;
    auto& t = table();
    std::shared_lock lock(t.mutex);
    return t.texts[id_];
}

bool symbol_text_less(Symbol a, Symbol b) {
    return a.text() < b.text();
}

}  // namespace ringforge::pddl
