// Estimated-vs-manual measurement badges and the estimate API call shape.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { RecommendForm } from "../src/form";
import { Intercepted, interceptingFetch } from "./helpers";

const ESTIMATE_TEXT =
  '{"measurements":{"bust":78.5,"waist":78.5,"shoulder":50.0,' +
  '"outside_leg":11.5,"source":"detected"}}';

describe("measurement badges", () => {
  it("an estimate fills fields marked estimated", () => {
    const form = new RecommendForm();
    const filled = form.applyEstimate(JSON.parse(ESTIMATE_TEXT).measurements);
    expect(filled).toEqual(["bust", "waist", "shoulder", "outside_leg"]);
    expect(form.badge("bust")).toBe("estimated");
    expect(form.measurements.get("waist")?.value).toBe("78.5");
  });

  it("editing one estimated field flips only that badge to manual", () => {
    const form = new RecommendForm();
    form.applyEstimate(JSON.parse(ESTIMATE_TEXT).measurements);
    form.setMeasurement("waist", "80");
    expect(form.badge("waist")).toBe("manual");
    expect(form.badge("bust")).toBe("estimated");
    expect(form.badge("shoulder")).toBe("estimated");
  });

  it("clearing a field removes it from the payload", () => {
    const form = new RecommendForm();
    form.setMeasurement("waist", "70");
    form.setMeasurement("waist", "");
    expect(form.badge("waist")).toBeUndefined();
    expect(form.toRequestBody().measurements).toEqual({});
  });
});

describe("estimate endpoint", () => {
  it("posts the image with the ppcm query parameter", async () => {
    const log: Intercepted[] = [];
    const api = new ApiClient(interceptingFetch([{ text: ESTIMATE_TEXT }], log));
    const resp = await api.estimate(new Uint8Array([80, 50]), 2);
    expect(log[0].url).toBe("/api/measurements/estimate?ppcm=2");
    expect(log[0].method).toBe("POST");
    expect(resp.measurements.source).toBe("detected");
  });

  it("surfaces the server's estimation error", async () => {
    const log: Intercepted[] = [];
    const api = new ApiClient(
      interceptingFetch(
        [
          {
            status: 422,
            text: '{"error":{"field":"image","message":"no foreground silhouette found"}}',
          },
        ],
        log,
      ),
    );
    await expect(api.estimate(new Uint8Array([0]), 2)).rejects.toThrow(
      "no foreground silhouette found",
    );
  });
});
