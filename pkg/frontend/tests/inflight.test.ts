// Network failure shows the retry banner; a new submit supersedes the
// pending one; resubmitting identical input is idempotent.

import { describe, expect, it } from "vitest";

import { ApiClient, FetchLike } from "../src/api";
import { RecommendController, ViewState } from "../src/controller";
import {
  EXAMPLE_RESPONSE_TEXT,
  Intercepted,
  exampleForm,
  interceptingFetch,
} from "./helpers";

describe("network failure", () => {
  it("renders the retry banner when the service is down", async () => {
    const failing: FetchLike = async () => {
      throw new TypeError("fetch failed");
    };
    const views: ViewState[] = [];
    const controller = new RecommendController(new ApiClient(failing), (v) =>
      views.push(v),
    );
    await controller.submit(exampleForm());
    expect(views).toHaveLength(1);
    expect(views[0].kind).toBe("retry");
    if (views[0].kind === "retry") {
      expect(views[0].html).toContain('data-action="retry"');
    }
  });
});

describe("single in-flight request", () => {
  it("a second submit aborts and supersedes the first", async () => {
    const signals: AbortSignal[] = [];
    let call = 0;
    const fetchFn: FetchLike = (_url, init) => {
      const mine = call++;
      signals.push(init!.signal!);
      if (mine === 0) {
        // first request hangs until aborted, like a slow server
        return new Promise((_resolve, reject) => {
          init!.signal!.addEventListener("abort", () =>
            reject(new DOMException("aborted", "AbortError")),
          );
        });
      }
      return Promise.resolve(
        new Response(EXAMPLE_RESPONSE_TEXT, {
          status: 200,
          headers: { "content-type": "application/json" },
        }),
      );
    };
    const views: ViewState[] = [];
    const controller = new RecommendController(new ApiClient(fetchFn), (v) =>
      views.push(v),
    );
    const first = controller.submit(exampleForm());
    const second = controller.submit(exampleForm());
    await Promise.all([first, second]);
    expect(signals[0].aborted).toBe(true);
    expect(views).toHaveLength(1); // the superseded request renders nothing
    expect(views[0].kind).toBe("results");
  });

  it("identical budget resubmission is idempotent", async () => {
    const log: Intercepted[] = [];
    const views: ViewState[] = [];
    const api = new ApiClient(
      interceptingFetch(
        [{ text: EXAMPLE_RESPONSE_TEXT }, { text: EXAMPLE_RESPONSE_TEXT }],
        log,
      ),
    );
    const controller = new RecommendController(api, (v) => views.push(v));
    const form = exampleForm();
    await controller.submit(form);
    await controller.submit(form);
    expect(log).toHaveLength(2);
    expect(log[0].body).toBe(log[1].body);
    expect(views).toHaveLength(2);
    if (views[0].kind === "results" && views[1].kind === "results") {
      expect(views[0].html).toBe(views[1].html);
    } else {
      throw new Error("expected two result views");
    }
  });
});
