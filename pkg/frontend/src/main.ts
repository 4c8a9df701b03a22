import { Client } from "./api.js";
import { mount } from "./render.js";
import { TemplateStore } from "./state.js";

async function boot(): Promise<void> {
  const container = document.getElementById("app");
  if (!container) throw new Error("missing #app container");
  const client = new Client("");
  const examples = await client.listExamples();
  if (!examples.length) {
    container.textContent = "No examples in the template store.";
    return;
  }
  const params = new URLSearchParams(window.location.search);
  const exampleId = params.get("example") ?? examples[0].id;
  const template = await client.getTemplate(exampleId);
  const { session_id } = await client.createSession(exampleId);
  const store = new TemplateStore(client, template, session_id);
  await store.refresh();
  mount(document, container, store);
}

void boot();
