#include "autobox/protocol.hpp"
#include "fixtures.hpp"

#include "json.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <doctest.h>

#include <fstream>
#include <thread>

using namespace autobox;
using nlohmann::json;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(AUTOBOX_DATA_DIR) / "scenarios";

std::vector<std::string> lines_of(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::vector<std::string> out;
    for (std::string l; std::getline(in, l);) {
        if (!l.empty()) out.push_back(l);
    }
    return out;
}

struct Scenario {
    std::string composition;
    std::vector<std::string> messages;
    std::vector<std::string> expected;
};

Scenario scenario(const std::string& name) {
    auto msgs = lines_of(kScenarios / (name + ".ndjson"));
    Scenario s{json::parse(msgs.at(0)).at("composition").get<std::string>(), {msgs.begin() + 1, msgs.end()},
               lines_of(kScenarios / (name + ".expected.ndjson"))};
    return s;
}

std::vector<json> replay(const Scenario& sc) {
    ProtocolSession p(test::composition(sc.composition));
    std::vector<json> out;
    for (const auto& m : sc.messages) out.push_back(json::parse(p.handle(m)));
    return out;
}

std::vector<std::string> decisions(const std::vector<json>& states) {
    std::vector<std::string> out;
    for (const auto& s : states) out.push_back(s.value("decision", "error"));
    return out;
}

std::string box_text(const json& state, std::size_t i = 0) {
    const auto& b = state["boxes"].at(i);
    auto text = state["text"].get<std::string>();
    return text.substr(b["start"].get<std::size_t>(), b["end"].get<std::size_t>() - b["start"].get<std::size_t>());
}

class Client {
public:
    explicit Client(int port) {
        fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
        sockaddr_in a{};
        a.sin_family = AF_INET;
        a.sin_port = htons(static_cast<std::uint16_t>(port));
        a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        ok_ = ::connect(fd_, reinterpret_cast<sockaddr*>(&a), sizeof a) == 0;
    }
    ~Client() { ::close(fd_); }
    bool ok() const { return ok_; }

    std::string ask(const std::string& line) {
        std::string out = line + "\n";
        if (::send(fd_, out.data(), out.size(), MSG_NOSIGNAL) != static_cast<ssize_t>(out.size())) return "";
        while (buf_.find('\n') == std::string::npos) {
            char chunk[4096];
            ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
            if (n <= 0) return "";
            buf_.append(chunk, static_cast<std::size_t>(n));
        }
        auto nl = buf_.find('\n');
        std::string reply = buf_.substr(0, nl);
        buf_.erase(0, nl + 1);
        return reply;
    }

private:
    int fd_ = -1;
    bool ok_ = false;
    std::string buf_;
};

}  // namespace

TEST_CASE("scenario replies match the golden traces") {
    for (const char* name : {"fig1", "fig6", "backspace", "fig7", "noinsert", "lua", "commit"}) {
        CAPTURE(name);
        auto sc = scenario(name);
        REQUIRE(sc.messages.size() == sc.expected.size());
        ProtocolSession p(test::composition(sc.composition));
        for (std::size_t i = 0; i < sc.messages.size(); ++i) {
            CAPTURE(i);
            auto reply = p.handle(sc.messages[i]);
            CHECK(reply == sc.expected[i]);
            auto j = json::parse(reply);
            if (j["type"] != "state") continue;
            CHECK(j["text"] == p.session().doc().text());
            std::string d = j["decision"];
            bool offered = d == "present" || d == "present_resize";
            CHECK(offered == !j["candidates"].empty());
        }
    }
}

TEST_CASE("figure 1 sequence") {
    auto st = replay(scenario("fig1"));
    auto dec = decisions(st);
    // load, then one state per key of "SELECT min(a), max(b) FROM t;" and " x = x;"
    REQUIRE(st.size() == 1 + 29 + 7);
    std::size_t comma = 1 + std::string("SELECT min(a)").size();
    std::size_t semi = 1 + std::string("SELECT min(a), max(b) FROM t").size();
    for (std::size_t i = 0; i < comma; ++i) CHECK(st[i]["boxes"].empty());
    CHECK(dec[comma] == "insert");
    CHECK(box_text(st[comma]) == "SELECT min(a)");
    for (std::size_t i = comma + 1; i < semi; ++i) {
        CHECK(dec[i] == "none");
        CHECK(box_text(st[i]) == "SELECT min(a)");
    }
    CHECK(dec[semi] == "resize");
    CHECK(box_text(st[semi]) == "SELECT min(a), max(b) FROM t");
    CHECK(st[semi]["errors"].empty());
    for (std::size_t i = semi + 1; i < st.size(); ++i) {
        CHECK(dec[i] == "none");
        CHECK(st[i]["boxes"] == st[semi]["boxes"]);
    }
    CHECK(st.back()["errors"].empty());
}

TEST_CASE("figure 6 removal") {
    auto st = replay(scenario("fig6"));
    auto dec = decisions(st);
    // The last box is the complete lowercase query, until the extra `*` lands.
    REQUIRE(st.size() >= 3);
    const auto& boxed = st[st.size() - 3];
    REQUIRE(boxed["boxes"].size() == 1);
    CHECK(box_text(boxed) == "select * from t");
    CHECK(dec[st.size() - 2] == "remove");
    CHECK(st.back()["boxes"].empty());
    CHECK(st.back()["errors"].empty());
    CHECK(st.back()["text"].get<std::string>().find("select * from * t;") != std::string::npos);
}

TEST_CASE("backspace after an insertion removes the box") {
    auto st = replay(scenario("backspace"));
    const auto& boxed = st[st.size() - 2];
    REQUIRE(boxed["boxes"].size() == 1);
    CHECK(box_text(boxed) == "SELECT * FROM t");
    CHECK(st.back()["decision"] == "remove");
    CHECK(st.back()["boxes"].empty());
    CHECK(st.back()["errors"].empty());
}

TEST_CASE("figure 7 present, choose and undo") {
    auto st = replay(scenario("fig7"));
    REQUIRE(st.size() == 5);
    CHECK(st[1]["decision"] == "present");
    CHECK(st[1]["boxes"].empty());
    CHECK_FALSE(st[1]["errors"].empty());
    REQUIRE(st[1]["candidates"].size() == 2);
    auto text = st[1]["text"].get<std::string>();
    auto cand = [&](int i) {
        const auto& c = st[1]["candidates"][static_cast<std::size_t>(i)];
        return text.substr(c["start"].get<std::size_t>(), c["end"].get<std::size_t>() - c["start"].get<std::size_t>());
    };
    CHECK(cand(0) == "SELECT a");
    CHECK(cand(1) == "SELECT a, b");
    CHECK(box_text(st[2]) == "SELECT a");
    CHECK(st[3]["text"] == st[1]["text"]);
    CHECK(st[3]["candidates"] == st[1]["candidates"]);
    CHECK(box_text(st[4]) == "SELECT a, b");
    CHECK(st[4]["errors"].empty());
}

TEST_CASE("undo marks the trigger so retyping inserts nothing") {
    auto st = replay(scenario("noinsert"));
    auto dec = decisions(st);
    std::size_t insert = std::find(dec.begin(), dec.end(), "insert") - dec.begin();
    REQUIRE(insert + 8 == st.size());  // undo, then three backspace and comma pairs
    for (std::size_t i = insert + 1; i < st.size(); ++i) {
        CHECK(st[i]["boxes"].empty());
        CHECK(dec[i] == "none");
    }
}

TEST_CASE("malformed messages get an error and keep the session") {
    ProtocolSession p(test::composition("java_sql"));
    auto reply = [&](const std::string& m) { return json::parse(p.handle(m)); };
    CHECK(reply(R"({"type":"load","text":"class A { }"})")["type"] == "state");
    for (const char* bad : {"{", "[]", R"({"ch":"a"})", R"({"type":"key"})", R"({"type":"key","ch":""})",
                            R"({"type":"move","pos":99})", R"({"type":"move","pos":-1})", R"({"type":"choose","id":1})",
                            R"({"type":"mark_uncommitted","box":4})", R"({"type":"key","ch":5})", R"({"type":"nope"})"}) {
        CAPTURE(bad);
        auto r = reply(bad);
        CHECK(r["type"] == "error");
        CHECK(r["message"].is_string());
    }
    auto r = reply(R"({"type":"move","pos":10})");
    CHECK(r["text"] == "class A { }");
    CHECK(r["cursor"] == 10);
    r = reply(R"({"type":"key","ch":"int z;"})");
    CHECK(r["text"] == "class A { int z;}");
    CHECK(r["errors"].empty());
    CHECK(reply(R"({"type":"undo"})")["text"] == "class A { }");
    CHECK(reply(R"({"type":"undo"})")["text"] == "class A { }");
}

TEST_CASE("tcp server runs independent sessions") {
    Server server(test::composition("java_sql"));
    int port = server.listen("127.0.0.1:0");
    REQUIRE(port > 0);
    std::thread loop([&] { server.run(); });

    auto fig1 = scenario("fig1");
    auto fig7 = scenario("fig7");
    std::vector<std::string> got1, got7;
    std::thread a([&] {
        Client c(port);
        if (!c.ok()) return;
        for (const auto& m : fig1.messages) got1.push_back(c.ask(m));
    });
    std::thread b([&] {
        Client c(port);
        if (!c.ok()) return;
        for (const auto& m : fig7.messages) got7.push_back(c.ask(m));
        got7.push_back(c.ask("not json"));
        got7.push_back(c.ask(R"({"type":"undo"})"));
    });
    a.join();
    b.join();
    CHECK(got1 == fig1.expected);
    REQUIRE(got7.size() == fig7.expected.size() + 2);
    CHECK(std::vector<std::string>(got7.begin(), got7.begin() + static_cast<std::ptrdiff_t>(fig7.expected.size())) ==
          fig7.expected);
    CHECK(json::parse(got7[got7.size() - 2])["type"] == "error");
    CHECK(json::parse(got7.back())["candidates"].size() == 2);

    server.stop();
    loop.join();
}
