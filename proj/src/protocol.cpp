#include "autobox/protocol.hpp"

#include "json.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace autobox {

using nlohmann::json;

namespace {

std::string error_reply(const std::string& msg) {
    return json{{"type", "error"}, {"message", msg}}.dump();
}

}  // namespace

ProtocolSession::ProtocolSession(std::shared_ptr<const Composition> comp, Config cfg)
    : comp_(std::move(comp)), cfg_(cfg), session_(std::make_unique<Session>(comp_, "", cfg_)) {}

std::string ProtocolSession::state() const {
    const Session& s = *session_;
    const Document& d = s.doc();
    json boxes = json::array();
    for (const auto& [id, b] : d.boxes()) {
        if (!d.is_live(b.inner)) continue;
        boxes.push_back({{"id", id},
                         {"start", d.box_start(id)},
                         {"end", d.box_end(id)},
                         {"lang", b.lang},
                         {"state", b.state == BoxState::committed ? "committed" : "uncommitted"}});
    }
    json errors = json::array();
    for (auto p : d.error_positions()) errors.push_back({{"pos", p}});
    json cands = json::array();
    int n = 0;
    for (const auto& c : s.candidates()) {
        auto [a, b] = s.absolute(c);
        cands.push_back({{"id", ++n}, {"start", a}, {"end", b}, {"lang", c.lang}});
    }
    json out{{"type", "state"},
             {"text", d.text()},
             {"boxes", boxes},
             {"errors", errors},
             {"candidates", cands},
             {"decision", decision_name(s.last_decision().kind)},
             {"cursor", s.cursor()}};
    return out.dump();
}

std::string ProtocolSession::handle(std::string_view line) {
    json m;
    try {
        m = json::parse(line);
    } catch (const json::parse_error& e) {
        return error_reply(std::string("malformed message: ") + e.what());
    }
    if (!m.is_object() || !m.contains("type") || !m["type"].is_string()) return error_reply("message needs a type");
    try {
        const std::string type = m["type"].get<std::string>();
        Session& s = *session_;
        if (type == "key") {
            auto ch = m.at("ch").get<std::string>();
            if (ch.empty()) return error_reply("empty key");
            s.key(ch);
        } else if (type == "move") {
            auto pos = m.at("pos").get<long long>();
            if (pos < 0 || static_cast<std::size_t>(pos) > s.doc().size()) return error_reply("position out of range");
            s.move(static_cast<std::size_t>(pos));
        } else if (type == "undo") {
            s.undo();
        } else if (type == "choose") {
            if (!s.choose(m.at("id").get<int>())) return error_reply("no such candidate");
        } else if (type == "mark_uncommitted") {
            if (!s.mark_uncommitted(m.at("box").get<int>())) return error_reply("no such box");
        } else if (type == "load") {
            auto text = m.at("text").get<std::string>();
            auto fresh = std::make_unique<Session>(comp_, text, cfg_);
            fresh->move(std::min<std::size_t>(m.value("cursor", std::size_t{0}), text.size()));
            session_ = std::move(fresh);
        } else {
            return error_reply("unknown message type " + type);
        }
    } catch (const json::exception& e) {
        return error_reply(std::string("bad field: ") + e.what());
    } catch (const std::exception& e) {
        return error_reply(e.what());
    }
    return state();
}

Server::Server(std::shared_ptr<const Composition> comp, Config cfg) : comp_(std::move(comp)), cfg_(cfg) {}

Server::~Server() {
    stop();
    for (auto& t : workers_) {
        if (t.joinable()) t.join();
    }
}

int Server::listen(const std::string& addr) {
    std::string host = "127.0.0.1", port = addr;
    if (auto colon = addr.rfind(':'); colon != std::string::npos) {
        host = colon ? addr.substr(0, colon) : "0.0.0.0";
        port = addr.substr(colon + 1);
    }
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (int rc = getaddrinfo(host.c_str(), port.c_str(), &hints, &res); rc != 0)
        throw std::runtime_error("cannot resolve " + addr + ": " + gai_strerror(rc));
    fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (fd_ < 0 || ::bind(fd_, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd_, 16) != 0) {
        std::string why = std::strerror(errno);
        freeaddrinfo(res);
        throw std::runtime_error("cannot listen on " + addr + ": " + why);
    }
    freeaddrinfo(res);
    sockaddr_in bound{};
    socklen_t len = sizeof bound;
    getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
    return ntohs(bound.sin_port);
}

void Server::run() {
    while (!stopping_) {
        int c = ::accept(fd_, nullptr, nullptr);
        if (c < 0) {
            if (errno == EINTR) continue;
            break;
        }
        if (stopping_) {
            ::close(c);
            break;
        }
        workers_.emplace_back([this, c] { serve_connection(c); });
    }
}

void Server::stop() {
    if (stopping_.exchange(true)) return;
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
    }
}

void Server::serve_connection(int fd) {
    ProtocolSession session(comp_, cfg_);
    std::string buf;
    char chunk[4096];
    auto send_all = [fd](const std::string& s) {
        std::size_t off = 0;
        while (off < s.size()) {
            ssize_t n = ::send(fd, s.data() + off, s.size() - off, MSG_NOSIGNAL);
            if (n <= 0) return false;
            off += static_cast<std::size_t>(n);
        }
        return true;
    };
    for (bool open = true; open;) {
        ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n <= 0) break;
        buf.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        while ((nl = buf.find('\n')) != std::string::npos) {
            std::string line = buf.substr(0, nl);
            buf.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            if (!send_all(session.handle(line) + "\n")) {
                open = false;
                break;
            }
        }
    }
    ::close(fd);
}

}  // namespace autobox
