/** Shared test fixture: a real service process on a free port. */

import { spawn, type ChildProcess } from "node:child_process";
import net from "node:net";

import { Client } from "../src/api.js";

export interface RunningService {
  base: string;
  client: Client;
  process: ChildProcess;
  stop: () => Promise<void>;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const probe = net.createServer();
    probe.once("error", reject);
    probe.listen(0, "127.0.0.1", () => {
      const address = probe.address();
      if (address === null || typeof address === "string") {
        probe.close(() => reject(new Error("could not allocate a port")));
        return;
      }
      const { port } = address;
      probe.close(() => resolve(port));
    });
  });
}

export async function startService(): Promise<RunningService> {
  const port = await freePort();
  const child = spawn("python3", ["-m", "fuzzynet", "serve", "--port", String(port)], {
    env: { ...process.env, FUZZYNET_NO_NUMBA: "1" },
    stdio: ["ignore", "ignore", "pipe"],
  });
  let errors = "";
  child.stderr?.on("data", (chunk: Buffer) => {
    errors += chunk.toString();
  });
  const base = `http://127.0.0.1:${port}`;
  const client = new Client(base);
  // Probe the raw socket rather than fetch: uvicorn only starts accepting
  // once the app is up, and a plain TCP poll stays quiet in DOM-shimmed
  // environments that log failed fetches.
  const deadline = Date.now() + 30_000;
  for (;;) {
    const accepted = await new Promise<boolean>((resolve) => {
      const socket = net.connect({ port, host: "127.0.0.1" }, () => {
        socket.end();
        resolve(true);
      });
      socket.once("error", () => resolve(false));
    });
    if (accepted) {
      break;
    }
    if (child.exitCode !== null) {
      throw new Error(`service exited with ${child.exitCode}: ${errors}`);
    }
    if (Date.now() > deadline) {
      throw new Error(`service did not come up in time: ${errors}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  await client.ping();
  return {
    base,
    client,
    process: child,
    stop: async () => {
      if (child.exitCode === null) {
        child.kill("SIGTERM");
        await new Promise((resolve) => child.once("exit", resolve));
      }
    },
  };
}

export async function waitFor(
  predicate: () => boolean,
  what: string,
  timeoutMs = 15_000,
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!predicate()) {
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 50));
  }
}
