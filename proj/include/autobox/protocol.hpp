#pragma once

#include "autobox/autobox.hpp"

#include <atomic>
#include <memory>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace autobox {

/// Newline-delimited JSON front end for one Session. Each request line
/// yields exactly one reply line (without the trailing newline).
///
/// Requests: key{ch}, move{pos}, undo, choose{id}, mark_uncommitted{box},
/// load{text, cursor?}. Replies: state{...} or error{message}.
class ProtocolSession {
public:
    ProtocolSession(std::shared_ptr<const Composition> comp, Config cfg = {});

    std::string handle(std::string_view line);
    std::string state() const;

    Session& session() { return *session_; }

private:
    std::shared_ptr<const Composition> comp_;
    Config cfg_;
    std::unique_ptr<Session> session_;
};

/// TCP server: one ProtocolSession per connection, one thread each.
class Server {
public:
    Server(std::shared_ptr<const Composition> comp, Config cfg = {});
    ~Server();

    /// Binds "host:port", "port" or ":port"; port 0 picks a free one.
    /// Returns the bound port.
    int listen(const std::string& addr);
    /// Accepts connections until stop().
    void run();
    void stop();

private:
    void serve_connection(int fd);

    std::shared_ptr<const Composition> comp_;
    Config cfg_;
    int fd_ = -1;
    std::atomic<bool> stopping_{false};
    std::vector<std::thread> workers_;
};

}  // namespace autobox
