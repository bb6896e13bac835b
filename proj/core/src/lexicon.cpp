// Bundled static word lists: stopwords, emoji names, irregular lemmas.

#include <algorithm>
#include <iterator>
#include <unordered_map>
#include <utility>

#include "cinerank/text.hpp"

namespace cinerank {

namespace {

// Sorted. Contractions appear in split form because tokenization breaks on
// apostrophes ("don't" -> "don", "t").
constexpr std::string_view kStopwords[] = {
    "a",        "about",     "above",   "after",  "again",  "against",    "ain",     "all",
    "am",       "an",        "and",     "any",    "are",    "aren",       "as",      "at",
    "be",       "because",   "been",    "before", "being",  "below",      "between", "both",
    "but",      "by",        "can",     "couldn", "d",      "did",        "didn",    "do",
    "does",     "doesn",     "doing",   "don",    "down",   "during",     "each",    "few",
    "for",      "from",      "further", "had",    "hadn",   "has",        "hasn",    "have",
    "haven",    "having",    "he",      "her",    "here",   "hers",       "herself", "him",
    "himself",  "his",       "how",     "i",      "if",     "in",         "into",    "is",
    "isn",      "it",        "its",     "itself", "just",   "ll",         "m",       "ma",
    "me",       "mightn",    "more",    "most",   "mustn",  "my",         "myself",  "needn",
    "no",       "nor",       "not",     "now",    "o",      "of",         "off",     "on",
    "once",     "only",      "or",      "other",  "our",    "ours",       "ourselves", "out",
    "over",     "own",       "re",      "s",      "same",   "shan",       "she",     "should",
    "shouldn",  "so",        "some",    "such",   "t",      "than",       "that",    "the",
    "their",    "theirs",    "them",    "themselves", "then", "there",    "these",   "they",
    "this",     "those",     "through", "to",     "too",    "under",      "until",   "up",
    "ve",       "very",      "was",     "wasn",   "we",     "were",       "weren",   "what",
    "when",     "where",     "which",   "while",  "who",    "whom",       "why",     "will",
    "with",     "won",       "wouldn",  "y",      "you",    "your",       "yours",   "yourself",
    "yourselves",
};

struct EmojiEntry {
  char32_t code_point;
  std::string_view name;
};

constexpr EmojiEntry kEmoji[] = {
    {0x2600, "sun"},
    {0x2601, "cloud"},
    {0x2614, "umbrella rain"},
    {0x2615, "hot beverage"},
    {0x2620, "skull crossbones"},
    {0x263A, "smiling face"},
    {0x2639, "frowning face"},
    {0x26A1, "high voltage"},
    {0x26BD, "soccer ball"},
    {0x2708, "airplane"},
    {0x2744, "snowflake"},
    {0x2764, "red heart"},
    {0x2B50, "star"},
    {0x1F308, "rainbow"},
    {0x1F30A, "water wave"},
    {0x1F319, "crescent moon"},
    {0x1F31F, "glowing star"},
    {0x1F339, "rose"},
    {0x1F355, "pizza"},
    {0x1F37F, "popcorn"},
    {0x1F381, "gift"},
    {0x1F382, "birthday cake"},
    {0x1F383, "jack o lantern"},
    {0x1F384, "christmas tree"},
    {0x1F389, "party popper"},
    {0x1F3A5, "movie camera"},
    {0x1F3AC, "movie camera"},
    {0x1F3AD, "performing arts"},
    {0x1F3AE, "video game"},
    {0x1F3B5, "musical note"},
    {0x1F3B6, "musical notes"},
    {0x1F3C6, "trophy"},
    {0x1F3E0, "house"},
    {0x1F40D, "snake"},
    {0x1F415, "dog"},
    {0x1F408, "cat"},
    {0x1F431, "cat face"},
    {0x1F436, "dog face"},
    {0x1F440, "eyes"},
    {0x1F44D, "thumbs up"},
    {0x1F44E, "thumbs down"},
    {0x1F44F, "clapping hands"},
    {0x1F46A, "family"},
    {0x1F47B, "ghost"},
    {0x1F47D, "alien"},
    {0x1F480, "skull"},
    {0x1F48B, "kiss mark"},
    {0x1F494, "broken heart"},
    {0x1F495, "two hearts"},
    {0x1F4A3, "bomb"},
    {0x1F4A5, "collision"},
    {0x1F4A9, "pile of poo"},
    {0x1F4AA, "flexed biceps"},
    {0x1F4AF, "hundred points"},
    {0x1F4B0, "money bag"},
    {0x1F4DA, "books"},
    {0x1F4F7, "camera"},
    {0x1F4FA, "television"},
    {0x1F525, "fire"},
    {0x1F52A, "kitchen knife"},
    {0x1F52B, "pistol"},
    {0x1F600, "grinning face"},
    {0x1F601, "beaming face"},
    {0x1F602, "face with tears of joy"},
    {0x1F603, "grinning face big eyes"},
    {0x1F604, "grinning face smiling eyes"},
    {0x1F605, "grinning face with sweat"},
    {0x1F606, "grinning squinting face"},
    {0x1F609, "winking face"},
    {0x1F60A, "smiling face smiling eyes"},
    {0x1F60D, "smiling face heart eyes"},
    {0x1F60E, "smiling face sunglasses"},
    {0x1F610, "neutral face"},
    {0x1F612, "unamused face"},
    {0x1F614, "pensive face"},
    {0x1F618, "face blowing kiss"},
    {0x1F621, "pouting face"},
    {0x1F622, "crying face"},
    {0x1F62D, "loudly crying face"},
    {0x1F631, "face screaming in fear"},
    {0x1F634, "sleeping face"},
    {0x1F637, "face with medical mask"},
    {0x1F644, "face with rolling eyes"},
    {0x1F64C, "raising hands"},
    {0x1F64F, "folded hands"},
    {0x1F680, "rocket"},
    {0x1F697, "automobile"},
    {0x1F52E, "crystal ball"},
    {0x1F914, "thinking face"},
    {0x1F923, "rolling on the floor laughing"},
    {0x1F929, "star struck"},
    {0x1F92F, "exploding head"},
    {0x1F970, "smiling face with hearts"},
    {0x1F973, "partying face"},
    {0x1F97A, "pleading face"},
    {0x1F984, "unicorn"},
    {0x1F9DF, "zombie"},
};

// Irregular surface form -> lemma. Lemmas that are themselves stopwords
// (be, have, do) are left out so the stopword stage stays authoritative.
constexpr std::pair<std::string_view, std::string_view> kLemmas[] = {
    // verbs
    {"arose", "arise"}, {"arisen", "arise"}, {"awoke", "awake"}, {"awoken", "awake"},
    {"became", "become"}, {"began", "begin"}, {"begun", "begin"}, {"bent", "bend"},
    {"bet", "bet"}, {"bitten", "bite"}, {"bled", "bleed"}, {"blew", "blow"}, {"blown", "blow"},
    {"broke", "break"}, {"broken", "break"}, {"bred", "breed"}, {"brought", "bring"},
    {"built", "build"}, {"burnt", "burn"}, {"burst", "burst"}, {"bought", "buy"},
    {"caught", "catch"}, {"chose", "choose"}, {"chosen", "choose"}, {"clung", "cling"},
    {"came", "come"}, {"crept", "creep"}, {"dealt", "deal"}, {"dug", "dig"}, {"dove", "dive"},
    {"drew", "draw"}, {"drawn", "draw"}, {"dreamt", "dream"}, {"drank", "drink"},
    {"drunk", "drink"}, {"drove", "drive"}, {"driven", "drive"}, {"ate", "eat"},
    {"eaten", "eat"}, {"fed", "feed"}, {"fought", "fight"}, {"fled", "flee"}, {"flung", "fling"},
    {"flew", "fly"}, {"flown", "fly"}, {"forbade", "forbid"}, {"forbidden", "forbid"},
    {"forgot", "forget"}, {"forgotten", "forget"}, {"forgave", "forgive"},
    {"forgiven", "forgive"}, {"froze", "freeze"}, {"frozen", "freeze"}, {"got", "get"},
    {"gotten", "get"}, {"gave", "give"}, {"given", "give"}, {"went", "go"}, {"gone", "go"},
    {"grew", "grow"}, {"grown", "grow"}, {"hung", "hang"}, {"heard", "hear"}, {"hid", "hide"},
    {"hidden", "hide"}, {"held", "hold"}, {"hurt", "hurt"}, {"kept", "keep"}, {"knelt", "kneel"},
    {"knew", "know"}, {"known", "know"}, {"laid", "lay"}, {"led", "lead"}, {"leapt", "leap"},
    {"learnt", "learn"}, {"lent", "lend"}, {"lost", "lose"}, {"made", "make"}, {"meant", "mean"},
    {"met", "meet"}, {"paid", "pay"}, {"proven", "prove"}, {"quit", "quit"}, {"rode", "ride"},
    {"ridden", "ride"}, {"rang", "ring"}, {"rung", "ring"}, {"risen", "rise"}, {"ran", "run"},
    {"said", "say"}, {"seen", "see"}, {"sought", "seek"}, {"sold", "sell"}, {"sent", "send"},
    {"shook", "shake"}, {"shaken", "shake"}, {"shone", "shine"}, {"shot", "shoot"},
    {"shown", "show"}, {"shrank", "shrink"}, {"shrunk", "shrink"}, {"shut", "shut"},
    {"sang", "sing"}, {"sung", "sing"}, {"sank", "sink"}, {"sunk", "sink"}, {"sat", "sit"},
    {"slept", "sleep"}, {"slid", "slide"}, {"slung", "sling"}, {"spoken", "speak"},
    {"sped", "speed"}, {"spent", "spend"}, {"spun", "spin"}, {"spat", "spit"}, {"split", "split"},
    {"spread", "spread"}, {"sprang", "spring"}, {"sprung", "spring"}, {"stood", "stand"},
    {"stole", "steal"}, {"stolen", "steal"}, {"stuck", "stick"}, {"stung", "sting"},
    {"stank", "stink"}, {"strode", "stride"}, {"struck", "strike"}, {"strove", "strive"},
    {"striven", "strive"}, {"swore", "swear"}, {"sworn", "swear"}, {"swept", "sweep"},
    {"swam", "swim"}, {"swum", "swim"}, {"swung", "swing"}, {"took", "take"}, {"taken", "take"},
    {"taught", "teach"}, {"torn", "tear"}, {"told", "tell"}, {"thought", "think"},
    {"threw", "throw"}, {"thrown", "throw"}, {"understood", "understand"}, {"woke", "wake"},
    {"woken", "wake"}, {"wore", "wear"}, {"worn", "wear"}, {"wove", "weave"}, {"woven", "weave"},
    {"wept", "weep"}, {"wound", "wind"}, {"wrung", "wring"}, {"wrote", "write"},
    {"written", "write"}, {"overcame", "overcome"}, {"overtook", "overtake"},
    {"undertook", "undertake"}, {"withdrew", "withdraw"}, {"withdrawn", "withdraw"},
    {"mistook", "mistake"}, {"mistaken", "mistake"}, {"foresaw", "foresee"},
    {"foreseen", "foresee"}, {"rebuilt", "rebuild"}, {"retold", "retell"}, {"rewrote", "rewrite"},
    {"rewritten", "rewrite"}, {"upheld", "uphold"}, {"withheld", "withhold"},
    // nouns
    {"children", "child"}, {"men", "man"}, {"women", "woman"}, {"people", "person"},
    {"mice", "mouse"}, {"geese", "goose"}, {"feet", "foot"}, {"teeth", "tooth"},
    {"oxen", "ox"}, {"lives", "life"}, {"wives", "wife"}, {"knives", "knife"},
    {"wolves", "wolf"}, {"leaves", "leaf"}, {"thieves", "thief"}, {"halves", "half"},
    {"shelves", "shelf"}, {"selves", "self"}, {"elves", "elf"}, {"loaves", "loaf"},
    {"heroes", "hero"}, {"potatoes", "potato"}, {"tomatoes", "tomato"}, {"cacti", "cactus"},
    {"fungi", "fungus"}, {"nuclei", "nucleus"}, {"alumni", "alumnus"}, {"crises", "crisis"},
    {"analyses", "analysis"}, {"theses", "thesis"}, {"phenomena", "phenomenon"},
    {"criteria", "criterion"}, {"data", "datum"}, {"media", "medium"}, {"dice", "die"},
    {"brethren", "brother"}, {"townsfolk", "townsfolk"}, {"policemen", "policeman"},
    {"firemen", "fireman"}, {"gentlemen", "gentleman"}, {"businessmen", "businessman"},
    {"grandchildren", "grandchild"},
    // adjectives
    {"better", "good"}, {"worse", "bad"}, {"worst", "bad"},
};

const std::unordered_map<std::string, std::string>& lemma_table(bool stemmed) {
  static const auto surface = [] {
    std::unordered_map<std::string, std::string> t;
    for (const auto& [form, lemma] : kLemmas) t.emplace(form, lemma);
    return t;
  }();
  static const auto stems = [] {
    std::unordered_map<std::string, std::string> t;
    for (const auto& [form, lemma] : kLemmas) {
      auto key = porter_stem(form);
      auto value = porter_stem(lemma);
      if (key != value) t.emplace(std::move(key), std::move(value));
    }
    return t;
  }();
  return stemmed ? stems : surface;
}

}  // namespace

std::span<const std::string_view> stopwords() { return kStopwords; }

bool is_stopword(std::string_view token) {
  return std::binary_search(std::begin(kStopwords), std::end(kStopwords), token);
}

std::optional<std::string_view> emoji_name(char32_t code_point) {
  for (const auto& e : kEmoji) {
    if (e.code_point == code_point) return e.name;
  }
  return std::nullopt;
}

std::string lemmatize(std::string_view token, bool stemmed) {
  const auto& table = lemma_table(stemmed);
  const auto it = table.find(std::string(token));
  return it == table.end() ? std::string(token) : it->second;
}

}  // namespace cinerank
