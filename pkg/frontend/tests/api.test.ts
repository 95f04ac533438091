import { describe, expect, it } from "vitest";

import { ApiError, Client } from "../src/api.js";

function mockFetch(
  handler: (input: string, init?: RequestInit) => { status: number; body: unknown },
) {
  const calls: { input: string; init?: RequestInit }[] = [];
  const fetchFn = async (input: string, init?: RequestInit): Promise<Response> => {
    calls.push({ input, init });
    const { status, body } = handler(input, init);
    return new Response(JSON.stringify(body), {
      status,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, calls };
}

describe("client", () => {
  it("creates sessions and unwraps the id", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: { session: "abc" } }));
    const client = new Client("", fetchFn);
    expect(await client.createSession("demo", 400)).toBe("abc");
    expect(calls[0].input).toBe("/sessions");
    expect(JSON.parse(String(calls[0].init?.body))).toEqual({
      dataset: "demo",
      screen_width_px: 400,
    });
  });

  it("issues drill/rollup/window mutations with JSON bodies", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: { revision: 1 } }));
    const client = new Client("", fetchFn);
    await client.drill("s", 3);
    await client.rollup("s", [1, 2]);
    await client.setWindow("s", 0, 8);
    expect(calls.map((c) => c.input)).toEqual([
      "/sessions/s/drill",
      "/sessions/s/rollup",
      "/sessions/s/window",
    ]);
    expect(JSON.parse(String(calls[1].init?.body))).toEqual({ bars: [1, 2] });
  });

  it("requests pixels and zoom bars as JSON", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: {} }));
    const client = new Client("", fetchFn);
    await client.getPixels("s");
    await client.getZoomBar("s");
    for (const call of calls) {
      expect((call.init?.headers as Record<string, string>).accept).toBe("application/json");
    }
  });

  it("encodes graph bar positions in the query string", async () => {
    const { fetchFn, calls } = mockFetch(() => ({ status: 200, body: {} }));
    const client = new Client("", fetchFn);
    await client.getGraph("s", [0, 3, 7]);
    expect(calls[0].input).toBe("/sessions/s/graph?bars=0,3,7");
  });

  it("surfaces the server's reason string on conflicts", async () => {
    const { fetchFn } = mockFetch(() => ({
      status: 409,
      body: { detail: "coarsen temporal intervals: 401 pixel-bars exceed 400 px" },
    }));
    const client = new Client("", fetchFn);
    try {
      await client.drill("s", 0);
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
      expect((err as ApiError).detail).toContain("coarsen temporal intervals");
    }
  });
});
