#include "ap4sq/cli.hpp"

#include "ap4sq/cache.hpp"
#include "ap4sq/criteria.hpp"
#include "ap4sq/rank_engine.hpp"
#include "ap4sq/thue_pyth.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iomanip>
#include <memory>
#include <sstream>

namespace ap4sq {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineFlags {
  std::int64_t height = 1000000;
  std::int64_t box = 1000;
  std::string descent = "on";
  std::string cache;
  bool stats = false;
  unsigned threads = 1;

  EngineOptions options() const {
    EngineOptions o;
    o.height_bound = height;
    o.descent_box = box;
    o.descent = descent == "on";
    o.threads = threads;
    return o;
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--height", f.height, "naive height bound for the point search")->check(CLI::PositiveNumber);
  cmd->add_option("--box", f.box, "parameter box for the descent point search")->check(CLI::PositiveNumber);
  cmd->add_option("--descent", f.descent, "run the 2-descent")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--cache", f.cache, "rank cache file");
  cmd->add_flag("--stats", f.stats, "report cache hits on stderr");
  cmd->add_option("--threads", f.threads, "worker threads")->check(CLI::Range(1u, 256u));
}

Integer parse_integer(const std::string& s) {
  Integer n;
  if (s.empty() || n.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw UsageError("not an integer: " + s);
  return n;
}

std::string verdict_line(const Integer& d, const Verdict& v) {
  std::string s = "d=" + d.get_str() + " verdict=" + to_string(v.kind) + " evidence=" + v.evidence;
  if (v.ap) s += " a=" + v.ap->first.to_string() + " r=" + v.ap->diff.to_string();
  return s;
}

int exit_code(const Verdict& v) { return v.kind == VerdictKind::unknown ? 2 : 0; }

// Reduces d to its squarefree part; d that reduce to 1 (the field Q) print
// the rational verdict and give exit code 1.
std::optional<Integer> reduce_d(const std::string& text, std::ostream& out, std::ostream& err) {
  Integer d = parse_integer(text);
  if (sgn(d) == 0) throw UsageError("d must be nonzero");
  Integer s = squarefree_decompose(d).squarefree;
  if (s != d) err << "warning: d=" << d << " reduced to its squarefree part " << s << "\n";
  if (s == 1) {
    out << "d=1 verdict=NO evidence=descent-rank-0\n";
    err << "error: Q(sqrt(1)) = Q is not a quadratic field; E(Q) has rank 0, so every rational progression of four "
           "squares is constant\n";
    return std::nullopt;
  }
  return s;
}

struct CacheStats {
  std::size_t hits = 0, misses = 0;
};

Verdict classify_with_cache(const Integer& d, const EngineFlags& flags, CacheStats& stats) {
  EngineOptions opts = flags.options();
  std::unique_ptr<RankCache> cache;
  if (!flags.cache.empty() && opts.descent) cache = std::make_unique<RankCache>(flags.cache);
  if (cache) {
    if (auto rec = cache->lookup(d); rec && rec->conclusive()) {
      ++stats.hits;
      Verdict v;
      if (rec->rank_hi == 0) {
        v.kind = VerdictKind::no;
        v.evidence = "descent-rank-0";
      } else {
        v.kind = VerdictKind::yes;
        v.evidence = "point-found";
        v.witness = rec->witness;
        v.ap = progression_from_twist_point(*rec->witness, d);
      }
      return v;
    }
    ++stats.misses;
  }
  Verdict v = field_rank_positive(d, opts);
  if (cache && v.descent) {
    CacheRecord rec{d, v.descent->rank_lo, v.descent->rank_hi, v.witness};
    if (v.witness && rec.rank_lo == 0) rec.rank_lo = 1;
    cache->store(rec);
  }
  return v;
}

std::string cell(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::yes:
      return "yes";
    case VerdictKind::no:
      return "no";
    case VerdictKind::yes_under_bsd:
      return "bsd-yes";
    case VerdictKind::unknown:
      return "?";
  }
  return "?";
}

template <class T>
std::string quadruple_text(const APQuadruple<T>& q) {
  return "[" + to_string(q.a) + "," + to_string(q.b) + "," + to_string(q.c) + "," + to_string(q.e) + "]";
}

// Runs f over Q when d = 1 and over Q(sqrt(d)) otherwise.
template <class F>
void with_field(const Integer& d, F&& f) {
  if (d == 1) {
    f(RationalField{});
  } else {
    if (!is_squarefree(d) || sgn(d) == 0) throw UsageError("--field must be 1 or a squarefree integer != 0");
    f(QuadraticField(d));
  }
}

template <class K>
typename K::Element parse_element(const std::string& text, const K& k) {
  if constexpr (std::is_same_v<K, RationalField>) {
    return parse_rational(text);
  } else {
    return parse_quadratic(text, k.d);
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Four squares in arithmetic progression over Q(sqrt(d))", "ap4sq"};
  app.require_subcommand(1);
  std::function<int()> action;

  // classify / find-ap
  EngineFlags cflags;
  std::string d_text;
  auto* classify = app.add_subcommand("classify", "decide whether Q(sqrt(d)) has a non-constant progression");
  classify->add_option("d", d_text, "nonzero integer")->required()->allow_extra_args(false);
  add_engine_flags(classify, cflags);
  classify->callback([&] {
    action = [&] {
      auto d = reduce_d(d_text, out, err);
      if (!d) return 1;
      CacheStats stats;
      Verdict v = classify_with_cache(*d, cflags, stats);
      out << verdict_line(*d, v) << "\n";
      if (cflags.stats) err << "cache: hits=" << stats.hits << " misses=" << stats.misses << "\n";
      return exit_code(v);
    };
  });

  EngineFlags fflags;
  auto* find_ap = app.add_subcommand("find-ap", "construct a progression over Q(sqrt(d))");
  find_ap->add_option("d", d_text, "nonzero integer")->required();
  add_engine_flags(find_ap, fflags);
  find_ap->callback([&] {
    action = [&] {
      auto d = reduce_d(d_text, out, err);
      if (!d) return 1;
      CacheStats stats;
      Verdict v = classify_with_cache(*d, fflags, stats);
      if (v.kind != VerdictKind::yes) {
        out << verdict_line(*d, v) << "\n";
        return v.kind == VerdictKind::no ? 0 : 2;
      }
      Point<QuadraticElement> P = lift_twist_point(*v.witness, *d);
      APQuadruple<QuadraticElement> q = point_to_ap(P, QuadraticField(*d));
      out << "d=" << *d << " a=" << v.ap->first << " r=" << v.ap->diff << " point=" << to_string(*v.witness)
          << " ap=" << quadruple_text(q) << "\n";
      if (fflags.stats) err << "cache: hits=" << stats.hits << " misses=" << stats.misses << "\n";
      return 0;
    };
  });

  // map
  auto* map = app.add_subcommand("map", "the progression <-> point correspondence");
  map->require_subcommand(1);
  std::string field_text = "1";
  std::vector<std::string> coords;
  auto* to_ap = map->add_subcommand("to-ap", "point (x,y) of E to a progression");
  to_ap->add_option("coords", coords, "x y")->required()->expected(2);
  to_ap->add_option("--field", field_text, "d of Q(sqrt(d)), 1 for Q");
  to_ap->callback([&] {
    action = [&] {
      with_field(parse_integer(field_text), [&](const auto& k) {
        using T = typename std::decay_t<decltype(k)>::Element;
        Point<T> P(parse_element(coords[0], k), parse_element(coords[1], k));
        if (!is_on_curve(curve_E(), P)) throw UsageError("point is not on y^2 = x(x+3)(x-1)");
        APQuadruple<T> q = point_to_ap(P, k);
        APCheck<T> chk = verify_ap(q);
        out << "ap=" << quadruple_text(q) << " diff=" << to_string(*chk.diff)
            << " constant=" << (chk.constant ? "true" : "false") << "\n";
      });
      return 0;
    };
  });
  auto* to_point = map->add_subcommand("to-point", "progression [a,b,c,e] to a point of E");
  to_point->add_option("coords", coords, "a b c e")->required()->expected(4);
  to_point->add_option("--field", field_text, "d of Q(sqrt(d)), 1 for Q");
  to_point->callback([&] {
    action = [&] {
      with_field(parse_integer(field_text), [&](const auto& k) {
        using T = typename std::decay_t<decltype(k)>::Element;
        APQuadruple<T> q{parse_element(coords[0], k), parse_element(coords[1], k), parse_element(coords[2], k),
                         parse_element(coords[3], k)};
        if (!q.is_valid()) throw UsageError("not a progression: need a^2+c^2=2b^2 and b^2+e^2=2c^2");
        out << "point=" << to_string(ap_to_point(q)) << "\n";
      });
      return 0;
    };
  });
  auto* lift = map->add_subcommand("lift", "point (X,Y) of y^2 = x(x+3d)(x-d) to E over Q(sqrt(d))");
  lift->add_option("coords", coords, "X Y")->required()->expected(2);
  lift->add_option("--field", field_text, "d")->required();
  lift->callback([&] {
    action = [&] {
      Integer d = parse_integer(field_text);
      if (d == 1 || sgn(d) == 0 || !is_squarefree(d)) throw UsageError("--field must be squarefree and not 0 or 1");
      Point<Rational> P(parse_rational(coords[0]), parse_rational(coords[1]));
      if (!is_on_curve(twist_curve(d), P)) throw UsageError("point is not on " + twist_curve(d).to_string());
      out << "point=" << to_string(lift_twist_point(P, d)) << "\n";
      return 0;
    };
  });

  // forms
  auto* forms_cmd = app.add_subcommand("forms", "ternary form counts and criteria");
  forms_cmd->require_subcommand(1);
  std::string form_id;
  std::int64_t n = 0;
  unsigned form_threads = 1;
  auto* count = forms_cmd->add_subcommand("count", "number of representations of n");
  count->add_option("form", form_id, "yoshida-2pi3-a|yoshida-2pi3-b|yoshida-pi3-a|yoshida-pi3-b|ono-a|ono-b")
      ->required();
  count->add_option("n", n, "positive integer")->required()->check(CLI::PositiveNumber);
  count->add_option("--threads", form_threads)->check(CLI::Range(1u, 256u));
  count->callback([&] {
    action = [&] {
      auto f = forms::by_name(form_id);
      if (!f) throw UsageError("unknown form: " + form_id);
      out << count_representations(*f, n, form_threads) << "\n";
      return 0;
    };
  });
  auto* criterion = forms_cmd->add_subcommand("criterion", "evaluate a form-pair criterion at n");
  criterion->add_option("name", form_id, "yoshida-2pi3|yoshida-pi3|ono")
      ->required()
      ->check(CLI::IsMember({"yoshida-2pi3", "yoshida-pi3", "ono"}));
  criterion->add_option("n", n, "squarefree positive integer")->required()->check(CLI::PositiveNumber);
  criterion->callback([&] {
    action = [&] {
      CriterionOutcome o = form_id == "yoshida-2pi3" ? yoshida_2pi3(n)
                           : form_id == "yoshida-pi3" ? yoshida_pi3(n)
                                                      : ono_6n_discordant(n);
      out << "n=" << n << " criterion=" << form_id << " applicable=" << (o.applicable ? "yes" : "no");
      if (o.applicable) out << " counts=" << o.count_a << "," << o.count_b;
      out << " verdict=" << to_string(o.verdict) << "\n";
      return 0;
    };
  });

  // theta
  EngineFlags tflags;
  std::string angle_text;
  auto* theta = app.add_subcommand("theta", "is n theta-congruent for theta = pi/3 or 2pi/3");
  theta->add_option("n", n, "squarefree positive integer")->required()->check(CLI::PositiveNumber);
  theta->add_option("angle", angle_text, "pi/3|2pi/3")->required()->check(CLI::IsMember({"pi/3", "2pi/3"}));
  add_engine_flags(theta, tflags);
  theta->callback([&] {
    action = [&] {
      Angle a = angle_text == "pi/3" ? Angle::pi_over_3 : Angle::two_pi_over_3;
      Verdict v = theta_congruent(n, a, tflags.options());
      out << "n=" << n << " theta=" << angle_text << " verdict=" << to_string(v.kind) << " evidence=" << v.evidence;
      if (v.witness) out << " point=" << to_string(*v.witness);
      out << "\n";
      return exit_code(v);
    };
  });

  // thue
  std::int64_t dmax = 100, tbox = 50;
  ThueScanOptions topts;
  auto* thue = app.add_subcommand("thue", "small d with F(x,y) = d");
  thue->add_option("--dmax", dmax, "largest |d|")->check(CLI::PositiveNumber);
  thue->add_option("--box", tbox, "search |x|, |y| <= box")->check(CLI::Range(1, 30000));
  thue->add_flag("--squarefree-part", topts.squarefree_part, "match the squarefree part of F");
  thue->add_flag("--include-rational", topts.include_rational, "keep d = 1");
  thue->add_option("--threads", topts.threads)->check(CLI::Range(1u, 256u));
  thue->callback([&] {
    action = [&] {
      for (const auto& hit : thue_scan(dmax, tbox, topts)) {
        out << "d=" << hit.d << " solutions=";
        for (std::size_t i = 0; i < hit.solutions.size(); ++i)
          out << (i ? " " : "") << "(" << hit.solutions[i].first << "," << hit.solutions[i].second << ")";
        out << "\n";
      }
      return 0;
    };
  });

  // table
  EngineFlags tabflags;
  std::int64_t pmin = 5, pmax = 47;
  auto* table = app.add_subcommand("table", "cells d = +-p, +-2p, +-3p, +-6p for primes p");
  table->add_option("--pmin", pmin, "smallest prime")->check(CLI::Range(5, 1000000));
  table->add_option("--pmax", pmax, "largest prime")->check(CLI::Range(5, 1000000));
  add_engine_flags(table, tabflags);
  table->callback([&] {
    action = [&] {
      const std::array<std::pair<int, int>, 8> cols{
          {{1, 1}, {1, 2}, {1, 3}, {1, 6}, {-1, 1}, {-1, 2}, {-1, 3}, {-1, 6}}};
      out << std::left << std::setw(6) << "p" << std::setw(7) << "p%24";
      for (auto [s, m] : cols) {
        std::string h = std::string("d=") + (s < 0 ? "-" : "") + (m == 1 ? "" : std::to_string(m)) + "p";
        out << std::setw(9) << h;
      }
      out << "\n";
      CacheStats stats;
      for (std::int64_t p = pmin; p <= pmax; ++p) {
        if (!is_prime(Integer(static_cast<long>(p)))) continue;
        out << std::setw(6) << p << std::setw(7) << p % 24;
        for (auto [s, m] : cols) {
          Integer d(static_cast<long>(s * m * p));
          out << std::setw(9) << cell(classify_with_cache(d, tabflags, stats));
        }
        out << "\n";
      }
      if (tabflags.stats) err << "cache: hits=" << stats.hits << " misses=" << stats.misses << "\n";
      return 0;
    };
  });

  std::vector<std::string> argv_store{"ap4sq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }
  try {
    return action ? action() : 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ap4sq
