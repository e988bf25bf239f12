#include "cometlens/pattern.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cometlens {

namespace {

// NFA over the four-symbol alphabet. States hold either a symbol edge or
// up to two epsilon edges; state 0 is reserved as "no state".
struct Nfa {
  struct State {
    int symbol = -1;  // EpisodeLabel index, or -1 for epsilon-only
    int next = 0;
    int alt = 0;
    bool accept = false;
  };
  std::vector<State> states{State{}};  // index 0 unused

  int add(State s) {
    states.push_back(s);
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int start = 0;
  // Dangling slots to patch: (state index, 0 = next / 1 = alt). Indices
  // survive vector growth where raw pointers would not.
  std::vector<std::pair<int, int>> out;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Nfa compile() {
    next_token();
    Fragment f = parse_alt();
    if (token_ != Token::End) fail("unexpected trailing input");
    int accept = nfa_.add({-1, 0, 0, true});
    patch(f.out, accept);
    start_ = f.start;
    return std::move(nfa_);
  }

  int start() const { return start_; }

 private:
  enum class Token { Label, LParen, RParen, Bar, Star, Plus, Question, End };

  [[noreturn]] void fail(const std::string& why) {
    throw Error(Code::E_PATTERN, why + " at offset " + std::to_string(pos_));
  }

  void next_token() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      token_ = Token::End;
      return;
    }
    char c = text_[pos_];
    switch (c) {
      case '(': token_ = Token::LParen; ++pos_; return;
      case ')': token_ = Token::RParen; ++pos_; return;
      case '|': token_ = Token::Bar; ++pos_; return;
      case '*': token_ = Token::Star; ++pos_; return;
      case '+': token_ = Token::Plus; ++pos_; return;
      case '?': token_ = Token::Question; ++pos_; return;
      default: break;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected character");
    std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    auto label = parse_episode_label(text_.substr(begin, pos_ - begin));
    if (!label) fail("unknown label '" + text_.substr(begin, pos_ - begin) + "'");
    token_ = Token::Label;
    label_ = *label;
  }

  void patch(const std::vector<std::pair<int, int>>& out, int target) {
    for (auto [state, slot] : out) {
      if (slot == 0) {
        nfa_.states[state].next = target;
      } else {
        nfa_.states[state].alt = target;
      }
    }
  }

  Fragment parse_alt() {
    Fragment left = parse_seq();
    while (token_ == Token::Bar) {
      next_token();
      Fragment right = parse_seq();
      int split = nfa_.add({-1, left.start, right.start, false});
      Fragment merged;
      merged.start = split;
      merged.out = left.out;
      merged.out.insert(merged.out.end(), right.out.begin(), right.out.end());
      left = std::move(merged);
    }
    return left;
  }

  bool at_atom_start() const {
    return token_ == Token::Label || token_ == Token::LParen;
  }

  Fragment parse_seq() {
    if (!at_atom_start()) fail("expected a label or group");
    Fragment acc = parse_rep();
    while (at_atom_start()) {
      Fragment next = parse_rep();
      patch(acc.out, next.start);
      acc.out = next.out;
    }
    return acc;
  }

  Fragment parse_rep() {
    Fragment f = parse_atom();
    while (token_ == Token::Star || token_ == Token::Plus || token_ == Token::Question) {
      Token op = token_;
      next_token();
      if (op == Token::Star) {
        int split = nfa_.add({-1, f.start, 0, false});
        patch(f.out, split);
        Fragment g;
        g.start = split;
        g.out = {{split, 1}};
        f = std::move(g);
      } else if (op == Token::Plus) {
        int split = nfa_.add({-1, f.start, 0, false});
        patch(f.out, split);
        Fragment g;
        g.start = f.start;
        g.out = {{split, 1}};
        f = std::move(g);
      } else {
        int split = nfa_.add({-1, f.start, 0, false});
        Fragment g;
        g.start = split;
        g.out = f.out;
        g.out.push_back({split, 1});
        f = std::move(g);
      }
    }
    return f;
  }

  Fragment parse_atom() {
    if (token_ == Token::Label) {
      int s = nfa_.add({static_cast<int>(label_), 0, 0, false});
      next_token();
      Fragment f;
      f.start = s;
      f.out = {{s, 0}};
      return f;
    }
    if (token_ == Token::LParen) {
      next_token();
      Fragment f = parse_alt();
      if (token_ != Token::RParen) fail("unbalanced parenthesis");
      next_token();
      return f;
    }
    fail("expected a label or group");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token token_ = Token::End;
  EpisodeLabel label_ = EpisodeLabel::Idle;
  Nfa nfa_;
  int start_ = 0;
};

void add_state(const Nfa& nfa, int s, std::set<int>& set) {
  if (s == 0 || set.count(s)) return;
  set.insert(s);
  const auto& st = nfa.states[s];
  if (st.symbol < 0 && !st.accept) {
    add_state(nfa, st.next, set);
    add_state(nfa, st.alt, set);
  } else if (st.symbol < 0 && st.accept) {
    // accept states carry no edges
  }
}

bool any_accept(const Nfa& nfa, const std::set<int>& set) {
  return std::any_of(set.begin(), set.end(),
                     [&](int s) { return nfa.states[s].accept; });
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> match_labels(
    const std::vector<EpisodeLabel>& labels, const std::string& pattern) {
  if (pattern.empty()) throw Error(Code::E_PATTERN, "empty pattern");
  Parser parser(pattern);
  Nfa nfa = parser.compile();
  const int start = parser.start();

  std::vector<std::pair<std::size_t, std::size_t>> matches;
  std::size_t i = 0;
  const std::size_t n = labels.size();
  while (i < n) {
    std::set<int> current;
    add_state(nfa, start, current);
    std::ptrdiff_t longest = -1;  // exclusive end of the longest accept
    std::size_t j = i;
    while (j < n && !current.empty()) {
      if (any_accept(nfa, current) && j > i) longest = static_cast<std::ptrdiff_t>(j);
      std::set<int> next;
      for (int s : current) {
        const auto& st = nfa.states[s];
        if (st.symbol == static_cast<int>(labels[j])) add_state(nfa, st.next, next);
      }
      current = std::move(next);
      ++j;
    }
    if (!current.empty() && any_accept(nfa, current) && j > i)
      longest = static_cast<std::ptrdiff_t>(j);
    if (longest > static_cast<std::ptrdiff_t>(i)) {
      matches.emplace_back(i, static_cast<std::size_t>(longest) - 1);
      i = static_cast<std::size_t>(longest);
    } else {
      ++i;
    }
  }
  return matches;
}

std::vector<PatternMatch> match_pattern(const std::vector<Episode>& episodes,
                                        const std::string& pattern) {
  std::vector<EpisodeLabel> labels;
  labels.reserve(episodes.size());
  for (const auto& e : episodes) labels.push_back(e.label);

  std::vector<PatternMatch> matches;
  for (auto [first, last] : match_labels(labels, pattern)) {
    PatternMatch m;
    m.first = first;
    m.last = last;
    m.span = {episodes[first].interval.start_ms, episodes[last].interval.end_ms};
    matches.push_back(m);
  }
  return matches;
}

std::optional<std::string> pattern_preset(const std::string& name) {
  if (name == kCompositePreset) {
    return std::string("INT (SOLO | IDLE | INT)* NON_INT ((SOLO | IDLE | INT)* NON_INT)*");
  }
  return std::nullopt;
}

}  // namespace cometlens
