#include "qunbraid.h"

#include "qub/error.hpp"
#include "qub/runner.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct qub_session {
    qub::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s)
{
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

template <class Fn>
qub_status guarded(Fn&& fn)
{
    g_last_error.clear();
    try {
        return fn();
    } catch (const qub::UsageError& e) {
        g_last_error = e.what();
        return QUB_USAGE;
    } catch (const qub::DegenerateError& e) {
        g_last_error = e.what();
        return QUB_DEGENERATE;
    } catch (const qub::Error& e) {
        g_last_error = e.what();
        return QUB_INTERNAL;
    } catch (const nlohmann::json::exception& e) {
        g_last_error = std::string("bad configuration: ") + e.what();
        return QUB_USAGE;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return QUB_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QUB_INTERNAL;
    }
}

qub_status run(qub_session* s, qub::RunOutput (*cmd)(const qub::RunConfig&), char** rendered, char** report)
{
    return guarded([&] {
        if (!s) throw qub::UsageError("null session");
        qub::RunOutput out = cmd(s->config);
        char* r1 = rendered ? dup(out.rendered) : nullptr;
        char* r2 = nullptr;
        try {
            r2 = report ? dup(out.report.dump(2) + "\n") : nullptr;
        } catch (...) {
            std::free(r1);
            throw;
        }
        if (rendered) *rendered = r1;
        if (report) *report = r2;
        return out.pass ? QUB_OK : QUB_CHECK_FAILED;
    });
}

} // namespace

extern "C" {

qub_status qub_session_new(const char* config_json, qub_session** out)
{
    return guarded([&] {
        if (!out) throw qub::UsageError("null output pointer");
        *out = nullptr;
        auto j = nlohmann::json::parse(config_json ? config_json : "{}");
        if (!j.is_object()) throw qub::UsageError("the configuration must be a JSON object");
        auto cfg = qub::RunConfig::from_json(j);
        *out = new qub_session{std::move(cfg)};
        return QUB_OK;
    });
}

void qub_session_free(qub_session* session)
{
    delete session;
}

qub_status qub_run_verify(qub_session* session, char** rendered, char** report)
{
    return run(session, &qub::run_verify, rendered, report);
}

qub_status qub_run_unbraid(qub_session* session, char** rendered, char** report)
{
    return run(session, &qub::run_unbraid, rendered, report);
}

qub_status qub_run_relations(qub_session* session, char** rendered, char** report)
{
    return run(session, &qub::run_relations, rendered, report);
}

void qub_string_free(char* s)
{
    std::free(s);
}

const char* qub_last_error(void)
{
    return g_last_error.c_str();
}

const char* qub_version(void)
{
    return "0.1.0";
}

}
